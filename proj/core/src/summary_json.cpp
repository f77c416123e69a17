#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ppsum/summarizer.hpp"

namespace ppsum {

namespace {

std::string quoted(const std::string& text) {
  return nlohmann::json(text).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::string fixed4(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

}  // namespace

// Hand-rolled so numbers keep a fixed four-decimal rendering.
std::string summary_to_json(const Summary& summary) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"source\": " << quoted(summary.source) << ",\n";
  out << "  \"mode\": " << quoted(std::string(to_string(summary.mode))) << ",\n";
  out << "  \"n_best\": " << summary.n_best << ",\n";
  out << "  \"space\": " << quoted(summary.space.to_string()) << ",\n";
  out << "  \"stats\": {\n";
  out << "    \"input_sentence_count\": " << summary.stats.input_sentence_count << ",\n";
  out << "    \"output_sentence_count\": " << summary.stats.output_sentence_count << ",\n";
  out << "    \"reduction_ratio\": " << fixed4(summary.stats.reduction_ratio) << "\n";
  out << "  },\n";
  out << "  \"topics\": [";
  for (std::size_t t = 0; t < summary.topics.size(); ++t) {
    const auto& topic = summary.topics[t];
    out << (t == 0 ? "\n" : ",\n");
    out << "    {\n";
    out << "      \"label\": " << quoted(topic.label) << ",\n";
    if (!topic.gloss.empty()) out << "      \"gloss\": " << quoted(topic.gloss) << ",\n";
    out << "      \"picks\": [";
    for (std::size_t p = 0; p < topic.picks.size(); ++p) {
      const auto& pick = topic.picks[p];
      out << (p == 0 ? "\n" : ",\n");
      out << "        {\"text\": " << quoted(pick.text) << ", \"distance\": "
          << (pick.distance ? fixed4(*pick.distance) : std::string("null")) << "}";
    }
    out << (topic.picks.empty() ? "]\n" : "\n      ]\n");
    out << "    }";
  }
  out << (summary.topics.empty() ? "]\n" : "\n  ]\n");
  out << "}\n";
  return out.str();
}

}  // namespace ppsum
