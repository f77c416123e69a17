#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ppsum/clustering.hpp"
#include "ppsum/error.hpp"

namespace ppsum {

using nlohmann::json;

void save_centroids(const CentroidSet& set, const std::filesystem::path& path) {
  validate(set);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + path.string());
  const json header{{"kind", "centroids"},
                    {"provider_id", set.provider.provider_id},
                    {"model_id", set.provider.model_id},
                    {"dim", set.provider.dim != 0 ? set.provider.dim : set.dim()},
                    {"vector_dim", set.dim()},
                    {"mode", to_string(set.mode)},
                    {"space", set.space.is_raw() ? "raw" : "pca"},
                    {"n_comp", set.space.pca_components},
                    {"count", set.size()}};
  out << header.dump() << '\n';
  for (std::size_t i = 0; i < set.size(); ++i) {
    out << json{{"label", set.labels[i]}}.dump() << '\n';
    const std::string text = set.glosses.empty() ? std::string() : set.glosses[i];
    out << json{{"text", text}, {"vector", set.centroids[i].values()}}.dump() << '\n';
  }
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + path.string());
}

CentroidSet load_centroids(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot open " + path.string());

  auto next_record = [&](const char* what) {
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), ErrorKind::kFormat,
            path.string() + ": missing " + std::string(what) + " line");
    try {
      return json::parse(line);
    } catch (const json::exception& e) {
      fail(ErrorKind::kFormat, path.string() + ": bad " + std::string(what) + " line: " + e.what());
    }
  };

  CentroidSet set;
  try {
    const json header = next_record("header");
    require(header.value("kind", "") == "centroids", ErrorKind::kFormat, path.string() + " is not a centroid file");
    set.provider = {header.at("provider_id").get<std::string>(), header.at("model_id").get<std::string>(),
                    header.at("dim").get<std::size_t>()};
    set.mode = parse_centroid_mode(header.at("mode").get<std::string>());
    const std::string space = header.at("space").get<std::string>();
    require(space == "raw" || space == "pca", ErrorKind::kFormat, path.string() + ": unknown space " + space);
    set.space = space == "raw" ? Space::raw() : Space::pca(header.at("n_comp").get<std::size_t>());
    const auto count = header.at("count").get<std::size_t>();
    for (std::size_t i = 0; i < count; ++i) {
      set.labels.push_back(next_record("label").at("label").get<std::string>());
      const json record = next_record("vector");
      set.glosses.push_back(record.at("text").get<std::string>());
      set.centroids.emplace_back(record.at("vector").get<std::vector<double>>());
    }
    validate(set);
    require(set.dim() == header.at("vector_dim").get<std::size_t>(), ErrorKind::kFormat,
            path.string() + ": centroid dim disagrees with header");
  } catch (const json::exception& e) {
    fail(ErrorKind::kFormat, path.string() + ": " + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kFormat) throw;
    fail(ErrorKind::kFormat, path.string() + ": " + e.what());
  }
  return set;
}

}  // namespace ppsum
