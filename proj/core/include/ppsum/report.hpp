#pragma once

#include <string>

#include "ppsum/evaluation.hpp"

namespace ppsum {

/// `company,random,pdc,kmeans,gdpr_fixed`, one line per company, then `mean`
/// and `std` lines. Values carry four decimals; a model that was not run is
/// left blank and a failed document shows `ERROR`.
std::string ssd_csv(const BatchReport& report);

/// `company,model,r1_p,r1_r,r1_f,r2_f,rl_f,rw_f,mean_r1_rl`, one line per
/// scored row, then `mean` and `std` lines per model in the company column.
std::string rouge_csv(const BatchReport& report);

/// `company,series,value` long-form rows for external charting: `ssd_<model>`
/// and `mean_r1_rl_<model>` series per company.
std::string plot_data_csv(const BatchReport& report);

}  // namespace ppsum
