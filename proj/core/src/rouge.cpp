#include <algorithm>
#include <cmath>
#include <map>

#include "ppsum/error.hpp"
#include "ppsum/evaluation.hpp"
#include "ppsum/text.hpp"

namespace ppsum {

PrfScore make_prf(double precision, double recall) {
  const double sum = precision + recall;
  if (sum <= 0.0) return {precision, recall, 0.0};
  return {precision, recall, 2.0 * precision * recall / sum};
}

std::vector<std::string> RougeTokenizer::operator()(std::string_view text) const {
  auto tokens = word_tokens(text, lowercase);
  if (!stopwords.empty()) {
    std::erase_if(tokens, [&](const std::string& t) {
      return std::find(stopwords.begin(), stopwords.end(), t) != stopwords.end();
    });
  }
  return tokens;
}

namespace {

std::map<std::vector<std::string>, std::size_t> ngram_counts(const std::vector<std::string>& tokens, std::size_t n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

}  // namespace

PrfScore rouge_n(std::string_view reference, std::string_view hypothesis, std::size_t n,
                 const RougeTokenizer& tokenizer) {
  require(n >= 1, ErrorKind::kArgument, "ROUGE-N needs n >= 1");
  const auto ref = tokenizer(reference);
  const auto hyp = tokenizer(hypothesis);
  const std::size_t ref_total = ref.size() >= n ? ref.size() - n + 1 : 0;
  const std::size_t hyp_total = hyp.size() >= n ? hyp.size() - n + 1 : 0;
  if (ref_total == 0 || hyp_total == 0) return {};

  const auto ref_counts = ngram_counts(ref, n);
  const auto hyp_counts = ngram_counts(hyp, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : hyp_counts) {
    if (const auto it = ref_counts.find(gram); it != ref_counts.end()) overlap += std::min(count, it->second);
  }
  return make_prf(static_cast<double>(overlap) / static_cast<double>(hyp_total),
                  static_cast<double>(overlap) / static_cast<double>(ref_total));
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> curr(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      curr[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

PrfScore rouge_l(std::string_view reference, std::string_view hypothesis, const RougeTokenizer& tokenizer) {
  const auto ref = tokenizer(reference);
  const auto hyp = tokenizer(hypothesis);
  if (ref.empty() || hyp.empty()) return {};
  const auto lcs = static_cast<double>(lcs_length(ref, hyp));
  return make_prf(lcs / static_cast<double>(hyp.size()), lcs / static_cast<double>(ref.size()));
}

double weighted_lcs(std::span<const std::string> reference, std::span<const std::string> hypothesis, double weight) {
  require(weight >= 1.0, ErrorKind::kArgument, "ROUGE-W weight must be >= 1");
  const std::size_t m = reference.size();
  const std::size_t n = hypothesis.size();
  // score[i][j]: weighted LCS of the prefixes; run[i][j]: length of the
  // consecutive match run ending at (i, j).
  std::vector<double> score((m + 1) * (n + 1), 0.0);
  std::vector<std::size_t> run((m + 1) * (n + 1), 0);
  const auto at = [n](std::size_t i, std::size_t j) { return i * (n + 1) + j; };
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (reference[i - 1] == hypothesis[j - 1]) {
        const auto k = static_cast<double>(run[at(i - 1, j - 1)]);
        score[at(i, j)] = score[at(i - 1, j - 1)] + std::pow(k + 1.0, weight) - std::pow(k, weight);
        run[at(i, j)] = run[at(i - 1, j - 1)] + 1;
      } else {
        score[at(i, j)] = std::max(score[at(i - 1, j)], score[at(i, j - 1)]);
        run[at(i, j)] = 0;
      }
    }
  }
  return score[at(m, n)];
}

PrfScore rouge_w(std::string_view reference, std::string_view hypothesis, double weight,
                 const RougeTokenizer& tokenizer) {
  require(weight >= 1.0, ErrorKind::kArgument, "ROUGE-W weight must be >= 1");
  const auto ref = tokenizer(reference);
  const auto hyp = tokenizer(hypothesis);
  if (ref.empty() || hyp.empty()) return {};
  const double wlcs = weighted_lcs(ref, hyp, weight);
  const auto inverse = [weight](double x) { return std::pow(x, 1.0 / weight); };
  const double precision = inverse(wlcs / std::pow(static_cast<double>(hyp.size()), weight));
  const double recall = inverse(wlcs / std::pow(static_cast<double>(ref.size()), weight));
  return make_prf(precision, recall);
}

RougeScores rouge_evaluate(std::span<const std::string> references, const Summary& summary,
                           const RougeEvalOptions& options) {
  require(!references.empty(), ErrorKind::kArgument, "no ROUGE references");
  require(summary.topics.size() == references.size(), ErrorKind::kArgument,
          "summary has " + std::to_string(summary.topics.size()) + " topics but there are " +
              std::to_string(references.size()) + " references");

  std::array<double, 8> sums{};  // p/r for r1, r2, rl, rw
  for (std::size_t t = 0; t < references.size(); ++t) {
    std::string hypothesis;
    for (const auto& pick : summary.topics[t].picks) {
      if (!hypothesis.empty()) hypothesis.push_back(' ');
      hypothesis += pick.text;
    }
    const PrfScore scores[4] = {rouge_n(references[t], hypothesis, 1, options.tokenizer),
                                rouge_n(references[t], hypothesis, 2, options.tokenizer),
                                rouge_l(references[t], hypothesis, options.tokenizer),
                                rouge_w(references[t], hypothesis, options.w_weight, options.tokenizer)};
    for (std::size_t s = 0; s < 4; ++s) {
      sums[2 * s] += scores[s].precision;
      sums[2 * s + 1] += scores[s].recall;
    }
  }

  const auto count = static_cast<double>(references.size());
  const auto mean = [&](std::size_t s) { return make_prf(sums[2 * s] / count, sums[2 * s + 1] / count); };
  RougeScores out;
  out.r1 = mean(0);
  out.r2 = mean(1);
  out.rl = mean(2);
  out.rw = mean(3);
  out.mean_r1_rl = (out.r1.f + out.rl.f) / 2.0;
  return out;
}

}  // namespace ppsum
