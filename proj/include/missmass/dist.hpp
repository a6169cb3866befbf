#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "summation.hpp"

namespace missmass {

/// Absolute tolerance on |sum - 1| accepted for a probability vector.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Dirac atoms lighter than this are dropped by uniform_dirac().
inline constexpr double kDiracOmitThreshold = 1e-12;

/*
  A validated probability vector over a finite alphabet.

  Zero-mass atoms are kept and counted in support_size(): the alphabet
  constraint of the extremal program counts slots, not occupied slots.
  Instances are immutable after construction.
*/
class DiscreteDistribution {
 public:
  static DiscreteDistribution from_probs(std::vector<double> values, bool normalize = false) {
    if (values.empty()) throw Error(ErrorCode::kEmpty, "distribution has no atoms");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(values[i] >= 0.0)) {
        throw Error(ErrorCode::kNegativeMass,
                    "atom " + std::to_string(i) + " has mass " + std::to_string(values[i]));
      }
    }
    const double total = compensated_sum(values);
    if (normalize) {
      if (total == 0.0) throw Error(ErrorCode::kZeroSum, "cannot normalize an all-zero vector");
      for (double& v : values) v /= total;
    } else if (std::abs(total - 1.0) > kNormalizationTolerance) {
      throw Error(ErrorCode::kNotNormalized, "masses sum to " + std::to_string(total));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] > 1.0 + kNormalizationTolerance) {
        throw Error(ErrorCode::kNotNormalized,
                    "atom " + std::to_string(i) + " exceeds 1: " + std::to_string(values[i]));
      }
    }
    return DiscreteDistribution(std::move(values));
  }

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t support_size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  auto begin() const noexcept { return probs_.begin(); }
  auto end() const noexcept { return probs_.end(); }

 private:
  explicit DiscreteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

inline DiscreteDistribution from_probs(std::vector<double> values, bool normalize = false) {
  return DiscreteDistribution::from_probs(std::move(values), normalize);
}

inline DiscreteDistribution uniform(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::kEmpty, "uniform distribution needs m >= 1");
  return from_probs(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

/// atom_count atoms of atom_mass followed by one Dirac atom (omitted if negligible).
inline DiscreteDistribution uniform_dirac(std::size_t atom_count, double atom_mass,
                                          double dirac_mass) {
  if (!(atom_mass >= 0.0) || !(dirac_mass >= 0.0)) {
    throw Error(ErrorCode::kNegativeMass, "uniform+dirac masses must be nonnegative");
  }
  const double total = static_cast<double>(atom_count) * atom_mass + dirac_mass;
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::kNotNormalized, "uniform+dirac masses sum to " + std::to_string(total));
  }
  std::vector<double> probs(atom_count, atom_mass);
  if (dirac_mass >= kDiracOmitThreshold) probs.push_back(dirac_mass);
  return from_probs(std::move(probs));
}

/// Alphabet size m, possibly unbounded.
class AlphabetBound {
 public:
  static AlphabetBound finite(std::uint64_t m) {
    if (m < 1) throw Error(ErrorCode::kInvalidAlphabet, "alphabet size must be >= 1");
    return AlphabetBound(m);
  }
  static constexpr AlphabetBound infinite() noexcept { return AlphabetBound(); }

  constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
  std::uint64_t value() const { return value_.value(); }

  friend constexpr bool operator==(const AlphabetBound&, const AlphabetBound&) = default;

 private:
  constexpr AlphabetBound() = default;
  explicit constexpr AlphabetBound(std::uint64_t m) : value_(m) {}

  std::optional<std::uint64_t> value_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

}  // namespace detail

/*
  Distribution file: one probability per line. Lines starting with '#' are
  comments; trailing blank lines are ignored. A blank line followed by more
  data is a parse error.
*/
inline DiscreteDistribution parse_distribution(std::istream& in, bool normalize = false) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> blank_at;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (!text.empty() && text.front() == '#') continue;
    if (text.empty()) {
      if (!blank_at) blank_at = line_no;
      continue;
    }
    if (blank_at) {
      throw Error(ErrorCode::kParse, "blank line " + std::to_string(*blank_at) + " before data");
    }
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": not a number: '" + std::string(text) + "'");
    }
    values.push_back(v);
  }
  return from_probs(std::move(values), normalize);
}

inline DiscreteDistribution read_distribution(const std::string& path, bool normalize = false) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return parse_distribution(in, normalize);
}

}  // namespace missmass
