#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "dicke/run.hpp"

namespace dicke {

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

inline constexpr const char* kTrajectoryHeader =
    "t,P,p_plus,p_sub,f_sr,f_sub,jz,var_x,var_y,var_z,c_value,ss2_violated,ss1_slack,ss4_slack";

// Absent fractions are written as empty fields.
void write_trajectory_csv(std::ostream& os, const std::vector<SampleRecord>& records);

nlohmann::json summary_to_json(const RunSummary& s);

inline constexpr const char* kSweepHeader =
    "detuning,seed,status,gamma_plus,b0,f_sub_steady,t_fsub_gt_fsr,t_fsr_lt_inv_n,t_c_lt_half,"
    "threshold_passed,error";

void write_sweep_csv(std::ostream& os, const SweepResult& sweep);

// "10" → d10, "-2.5" → d-2.5; used in output file names.
std::string tag_number(double v);

}  // namespace dicke
