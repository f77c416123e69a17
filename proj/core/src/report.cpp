#include "ppsum/report.hpp"

#include <cstdio>
#include <map>
#include <vector>

namespace ppsum {
namespace {

std::string fixed4(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

// Quotes a CSV field only when it needs it.
std::string field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

constexpr EvalModel kSsdColumns[] = {EvalModel::kRandom, EvalModel::kPdc, EvalModel::kKmeans, EvalModel::kGdpr};

const ModelAggregate* find_aggregate(const BatchReport& report, EvalModel model) {
  for (const auto& agg : report.aggregates) {
    if (agg.model == model) return &agg;
  }
  return nullptr;
}

}  // namespace

std::string ssd_csv(const BatchReport& report) {
  std::string out = "company,random,pdc,kmeans,gdpr_fixed\n";
  std::vector<std::string> companies;
  std::map<std::string, std::map<EvalModel, const EvalRow*>> by_company;
  for (const auto& row : report.rows) {
    if (!by_company.contains(row.company)) companies.push_back(row.company);
    by_company[row.company][row.model] = &row;
  }
  for (const auto& company : companies) {
    out += field(company);
    const auto& cells = by_company[company];
    for (EvalModel model : kSsdColumns) {
      out.push_back(',');
      const auto it = cells.find(model);
      if (it == cells.end()) continue;
      if (it->second->error) {
        out += "ERROR";
      } else if (it->second->ssd) {
        out += fixed4(*it->second->ssd);
      }
    }
    out.push_back('\n');
  }
  for (const char* stat : {"mean", "std"}) {
    out += stat;
    for (EvalModel model : kSsdColumns) {
      out.push_back(',');
      const auto* agg = find_aggregate(report, model);
      if (agg == nullptr || agg->ssd.count == 0) continue;
      out += fixed4(stat[0] == 'm' ? agg->ssd.mean : agg->ssd.std_dev);
    }
    out.push_back('\n');
  }
  return out;
}

std::string rouge_csv(const BatchReport& report) {
  std::string out = "company,model";
  for (auto column : kRougeColumns) {
    out.push_back(',');
    out += column;
  }
  out.push_back('\n');

  for (const auto& row : report.rows) {
    if (row.model == EvalModel::kGdpr) continue;
    out += field(row.company);
    out.push_back(',');
    out += to_string(row.model);
    for (std::size_t c = 0; c < kRougeColumns.size(); ++c) {
      out.push_back(',');
      if (row.error) {
        out += "ERROR";
      } else if (row.rouge) {
        out += fixed4(rouge_columns(*row.rouge)[c]);
      }
    }
    out.push_back('\n');
  }

  for (const char* stat : {"mean", "std"}) {
    for (const auto& agg : report.aggregates) {
      if (!agg.rouge) continue;
      out += stat;
      out.push_back(',');
      out += to_string(agg.model);
      for (const auto& s : *agg.rouge) {
        out.push_back(',');
        out += fixed4(stat[0] == 'm' ? s.mean : s.std_dev);
      }
      out.push_back('\n');
    }
  }
  return out;
}

std::string plot_data_csv(const BatchReport& report) {
  std::string out = "company,series,value\n";
  for (const auto& row : report.rows) {
    if (row.error) continue;
    const std::string model(to_string(row.model));
    if (row.ssd) out += field(row.company) + ",ssd_" + model + "," + fixed4(*row.ssd) + "\n";
    if (row.rouge) out += field(row.company) + ",mean_r1_rl_" + model + "," + fixed4(row.rouge->mean_r1_rl) + "\n";
  }
  return out;
}

}  // namespace ppsum
