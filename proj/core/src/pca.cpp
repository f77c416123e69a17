#include "ppsum/pca.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>

#include "ppsum/error.hpp"

namespace ppsum {

namespace {

void check_data(std::span<const SentenceVector> data) {
  require(data.size() >= 2, ErrorKind::kArgument, "PCA needs at least two points");
  const std::size_t d = data.front().dim();
  require(d > 0, ErrorKind::kArgument, "PCA needs non-empty vectors");
  for (const auto& v : data) {
    require(v.dim() == d, ErrorKind::kArgument, "PCA input has mixed dimensions");
    for (double x : v) require(std::isfinite(x), ErrorKind::kArgument, "PCA input holds a non-finite value");
  }
}

}  // namespace

PcaModel pca_fit(std::span<const SentenceVector> data, std::size_t n_comp) {
  check_data(data);
  const std::size_t n = data.size();
  const std::size_t d = data.front().dim();
  require(n_comp >= 1 && n_comp <= std::min(d, n), ErrorKind::kArgument,
          "n_comp " + std::to_string(n_comp) + " outside [1, " + std::to_string(std::min(d, n)) + "]");

  std::vector<double> mean(d, 0.0);
  for (const auto& v : data) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += v[j];
  }
  for (double& m : mean) m /= static_cast<double>(n);

  // Upper triangle of the centered scatter matrix, then mirror.
  Matrix cov(d, d);
  std::vector<double> centered(d);
  for (const auto& v : data) {
    for (std::size_t j = 0; j < d; ++j) centered[j] = v[j] - mean[j];
    for (std::size_t r = 0; r < d; ++r) {
      const double cr = centered[r];
      if (cr == 0.0) continue;
      auto row = cov.row(r);
      for (std::size_t c = r; c < d; ++c) row[c] += cr * centered[c];
    }
  }
  const double scale = 1.0 / static_cast<double>(n - 1);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = r; c < d; ++c) {
      cov(r, c) *= scale;
      cov(c, r) = cov(r, c);
    }
  }

  double total = 0.0;
  for (std::size_t j = 0; j < d; ++j) total += cov(j, j);

  const SymmetricEigen eig = jacobi_eigen(cov);

  PcaModel model;
  model.mean = SentenceVector(std::move(mean));
  model.total_variance = total;
  model.components = Matrix(n_comp, d);
  for (std::size_t i = 0; i < n_comp; ++i) {
    const double value = std::max(0.0, eig.values[i]);
    model.eigenvalues.push_back(value);
    model.explained_variance_ratio.push_back(total > 0.0 ? value / total : 0.0);

    auto src = eig.vectors.row(i);
    std::size_t pivot = 0;
    for (std::size_t j = 1; j < d; ++j) {
      if (std::abs(src[j]) > std::abs(src[pivot])) pivot = j;
    }
    const double sign = src[pivot] < 0.0 ? -1.0 : 1.0;
    auto dst = model.components.row(i);
    for (std::size_t j = 0; j < d; ++j) dst[j] = sign * src[j];
  }
  return model;
}

SentenceVector pca_transform(const PcaModel& model, const SentenceVector& v) {
  const std::size_t d = model.input_dim();
  require(v.dim() == d, ErrorKind::kArgument,
          "vector dim " + std::to_string(v.dim()) + " does not match PCA input dim " + std::to_string(d));
  std::vector<double> centered(d);
  for (std::size_t j = 0; j < d; ++j) centered[j] = v[j] - model.mean[j];
  std::vector<double> out(model.n_components(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto axis = model.components.row(i);
    double dot = 0.0;
    for (std::size_t j = 0; j < d; ++j) dot += axis[j] * centered[j];
    out[i] = dot;
  }
  return SentenceVector(std::move(out));
}

std::vector<SentenceVector> pca_transform(const PcaModel& model, std::span<const SentenceVector> data) {
  std::vector<SentenceVector> out;
  out.reserve(data.size());
  for (const auto& v : data) out.push_back(pca_transform(model, v));
  return out;
}

SentenceVector pca_inverse_transform(const PcaModel& model, const SentenceVector& projected) {
  require(projected.dim() == model.n_components(), ErrorKind::kArgument,
          "projected dim " + std::to_string(projected.dim()) + " does not match n_comp " +
              std::to_string(model.n_components()));
  std::vector<double> out(model.mean.begin(), model.mean.end());
  for (std::size_t i = 0; i < model.n_components(); ++i) {
    auto axis = model.components.row(i);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += projected[i] * axis[j];
  }
  return SentenceVector(std::move(out));
}

std::size_t choose_n_comp_by_variance(std::span<const double> explained_variance_ratio, double threshold) {
  require(threshold > 0.0 && threshold <= 1.0, ErrorKind::kArgument,
          "variance threshold must lie in (0, 1], got " + std::to_string(threshold));
  require(!explained_variance_ratio.empty(), ErrorKind::kArgument, "no explained variance ratios");
  // Ratios of a full decomposition sum to 1 only up to rounding; allow that slack at the top.
  constexpr double kSlack = 1e-12;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < explained_variance_ratio.size(); ++i) {
    cumulative += explained_variance_ratio[i];
    if (cumulative + kSlack >= threshold) return i + 1;
  }
  fail(ErrorKind::kArgument, "ratios never reach threshold " + std::to_string(threshold) +
                                 "; was the model fitted at full rank?");
}

std::size_t choose_n_comp_by_variance(const PcaModel& full_rank_model, double threshold) {
  return choose_n_comp_by_variance(full_rank_model.explained_variance_ratio, threshold);
}

namespace {

constexpr std::array<char, 8> kMagic{'P', 'P', 'S', 'U', 'M', 'P', 'C', 'A'};
constexpr std::uint32_t kVersion = 1;

template <typename U>
void put_le(std::ofstream& out, U value) {
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

void put_f64(std::ofstream& out, double value) { put_le(out, std::bit_cast<std::uint64_t>(value)); }

template <typename U>
U get_le(std::ifstream& in, const std::filesystem::path& path) {
  std::array<unsigned char, sizeof(U)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  require(static_cast<bool>(in), ErrorKind::kFormat, "truncated PCA model file " + path.string());
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
  return value;
}

double get_f64(std::ifstream& in, const std::filesystem::path& path) {
  const double v = std::bit_cast<double>(get_le<std::uint64_t>(in, path));
  require(std::isfinite(v), ErrorKind::kFormat, "non-finite value in PCA model file " + path.string());
  return v;
}

}  // namespace

void save_pca_model(const PcaModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + path.string());
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kVersion);
  put_le<std::uint64_t>(out, model.input_dim());
  put_le<std::uint64_t>(out, model.n_components());
  put_f64(out, model.total_variance);
  for (double v : model.mean) put_f64(out, v);
  for (double v : model.eigenvalues) put_f64(out, v);
  for (double v : model.explained_variance_ratio) put_f64(out, v);
  for (double v : model.components.data()) put_f64(out, v);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + path.string());
}

PcaModel load_pca_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot open " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  require(static_cast<bool>(in) && magic == kMagic, ErrorKind::kFormat, path.string() + " is not a PCA model file");
  require(get_le<std::uint32_t>(in, path) == kVersion, ErrorKind::kFormat,
          "unsupported PCA model version in " + path.string());
  const auto d = get_le<std::uint64_t>(in, path);
  const auto n_comp = get_le<std::uint64_t>(in, path);
  require(d > 0 && n_comp > 0 && n_comp <= d && d <= (1u << 20), ErrorKind::kFormat,
          "implausible PCA dimensions in " + path.string());

  PcaModel model;
  model.total_variance = get_f64(in, path);
  std::vector<double> mean(d);
  for (auto& v : mean) v = get_f64(in, path);
  model.mean = SentenceVector(std::move(mean));
  model.eigenvalues.resize(n_comp);
  for (auto& v : model.eigenvalues) v = get_f64(in, path);
  model.explained_variance_ratio.resize(n_comp);
  for (auto& v : model.explained_variance_ratio) v = get_f64(in, path);
  model.components = Matrix(n_comp, d);
  for (std::size_t i = 0; i < n_comp; ++i) {
    for (auto& v : model.components.row(i)) v = get_f64(in, path);
  }
  return model;
}

}  // namespace ppsum
