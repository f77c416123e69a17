#include "ppsum/embedding_store.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ppsum/error.hpp"

namespace ppsum {

using nlohmann::json;

namespace {

json header_record(const ProviderDescriptor& d) {
  return json{{"provider_id", d.provider_id}, {"model_id", d.model_id}, {"dim", d.dim}};
}

ProviderDescriptor parse_header(const std::string& line, const std::filesystem::path& path) {
  try {
    const json j = json::parse(line);
    ProviderDescriptor d{j.at("provider_id").get<std::string>(), j.at("model_id").get<std::string>(),
                         j.at("dim").get<std::size_t>()};
    require(d.dim > 0 && !d.provider_id.empty(), ErrorKind::kFormat,
            "store header in " + path.string() + " has an empty provider id or zero dim");
    return d;
  } catch (const json::exception& e) {
    fail(ErrorKind::kFormat, "bad store header in " + path.string() + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

EmbeddingStore::EmbeddingStore(ProviderDescriptor descriptor) : descriptor_(std::move(descriptor)) {
  require(descriptor_.dim > 0 && !descriptor_.provider_id.empty(), ErrorKind::kArgument,
          "store descriptor needs a provider id and dim > 0");
}

EmbeddingStore EmbeddingStore::load(const std::filesystem::path& path) {
  const std::string content = read_file(path);

  // Only newline-terminated lines count; a partial tail is an interrupted append.
  std::size_t complete = content.rfind('\n');
  complete = complete == std::string::npos ? 0 : complete + 1;

  std::istringstream lines(content.substr(0, complete));
  std::string line;
  require(static_cast<bool>(std::getline(lines, line)), ErrorKind::kFormat,
          "store file " + path.string() + " has no header line");
  EmbeddingStore store(parse_header(line, path));
  store.path_ = path;

  std::size_t line_no = 1;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      SentenceVector v(j.at("vector").get<std::vector<double>>());
      require(v.dim() == store.descriptor_.dim, ErrorKind::kFormat,
              path.string() + ":" + std::to_string(line_no) + ": vector dim " + std::to_string(v.dim()) +
                  " != header dim " + std::to_string(store.descriptor_.dim));
      store.add_in_memory(j.at("text").get<std::string>(), std::move(v));
    } catch (const json::exception& e) {
      fail(ErrorKind::kFormat, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }

  if (complete != content.size()) std::filesystem::resize_file(path, complete);
  return store;
}

EmbeddingStore EmbeddingStore::open(const std::filesystem::path& path, const ProviderDescriptor& expected) {
  if (std::filesystem::exists(path) && std::filesystem::file_size(path) > 0) {
    EmbeddingStore store = load(path);
    require(store.descriptor() == expected, ErrorKind::kConfiguration,
            "store " + path.string() + " was built with " + describe(store.descriptor()) + " but provider is " +
                describe(expected));
    return store;
  }
  EmbeddingStore store(expected);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot create " + path.string());
  out << header_record(expected).dump() << '\n';
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + path.string());
  store.path_ = path;
  return store;
}

const SentenceVector* EmbeddingStore::find(const std::string& text) const {
  const auto it = index_.find(text);
  return it == index_.end() ? nullptr : &entries_[it->second].vector;
}

bool EmbeddingStore::add_in_memory(std::string text, SentenceVector vector) {
  if (index_.contains(text)) return false;
  index_.emplace(text, entries_.size());
  entries_.push_back({std::move(text), std::move(vector)});
  return true;
}

std::size_t EmbeddingStore::insert(std::span<const Entry> entries) {
  for (const auto& e : entries) {
    require(e.vector.dim() == descriptor_.dim, ErrorKind::kConfiguration,
            "vector dim " + std::to_string(e.vector.dim()) + " does not match store dim " +
                std::to_string(descriptor_.dim));
  }
  const std::size_t first_new = entries_.size();
  for (const auto& e : entries) add_in_memory(e.text, e.vector);
  const std::size_t added = entries_.size() - first_new;

  if (path_ && added > 0) {
    std::ofstream out(*path_, std::ios::binary | std::ios::app);
    require(static_cast<bool>(out), ErrorKind::kIo, "cannot append to " + path_->string());
    for (std::size_t i = first_new; i < entries_.size(); ++i) {
      out << json{{"text", entries_[i].text}, {"vector", entries_[i].vector.values()}}.dump() << '\n';
    }
    out.flush();
    require(static_cast<bool>(out), ErrorKind::kIo, "cannot append to " + path_->string());
  }
  return added;
}

std::vector<SentenceVector> store_get_or_embed(EmbeddingStore& store, std::span<const std::string> sentences,
                                               EmbeddingProvider& provider) {
  const ProviderDescriptor provided = provider.descriptor();
  require(provided == store.descriptor(), ErrorKind::kConfiguration,
          "store holds " + describe(store.descriptor()) + " vectors but provider is " + describe(provided));

  std::vector<std::string> misses;
  std::unordered_map<std::string, bool> queued;
  for (const auto& s : sentences) {
    if (store.find(s) == nullptr && queued.emplace(s, true).second) misses.push_back(s);
  }

  if (!misses.empty()) {
    auto vectors = provider.embed(misses);
    require(vectors.size() == misses.size(), ErrorKind::kProtocol,
            "provider returned " + std::to_string(vectors.size()) + " vectors for " + std::to_string(misses.size()) +
                " sentences");
    std::vector<EmbeddingStore::Entry> fresh;
    fresh.reserve(misses.size());
    for (std::size_t i = 0; i < misses.size(); ++i) fresh.push_back({std::move(misses[i]), std::move(vectors[i])});
    store.insert(fresh);
  }

  std::vector<SentenceVector> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(*store.find(s));
  return out;
}

}  // namespace ppsum
