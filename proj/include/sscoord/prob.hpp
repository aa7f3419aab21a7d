#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sscoord {

// Error taxonomy used across the library.
struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kSumTol = 1e-9;      // normalization checks
inline constexpr double kDerivedTol = 1e-6;  // derived identities (chain rules etc.)
// Full joint tensors are capped; operations refuse rather than approximate.
inline constexpr std::size_t kTensorBudget = std::size_t{1} << 24;

struct Alphabet {
  std::string label;
  int size = 0;
  bool operator==(const Alphabet&) const = default;
};

std::size_t product_size(std::span<const Alphabet> axes);

// Finite probability mass function over a single labeled alphabet.
class Pmf {
 public:
  Pmf(Alphabet alphabet, std::vector<double> probs);

  static Pmf uniform(const Alphabet& alphabet);
  static Pmf point_mass(const Alphabet& alphabet, int symbol);
  static Pmf bernoulli(std::string label, double p1);  // P(1) = p1 over {0,1}

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<double>& probs() const { return probs_; }
  double operator[](int i) const { return probs_[static_cast<std::size_t>(i)]; }

 private:
  Alphabet alphabet_;
  std::vector<double> probs_;
};

// Row-stochastic conditional distribution: rows indexed by the `from` product
// alphabet, each row a distribution over the `to` product alphabet. All-zero
// rows are permitted and treated as unreachable.
class Kernel {
 public:
  Kernel(std::vector<Alphabet> from, std::vector<Alphabet> to, std::vector<double> probs);

  static Kernel identity(const Alphabet& from, std::string to_label);
  static Kernel bsc(std::string from_label, std::string to_label, double crossover);
  static Kernel constant(std::vector<Alphabet> from, const Pmf& row);

  const std::vector<Alphabet>& from() const { return from_; }
  const std::vector<Alphabet>& to() const { return to_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t row, std::size_t col) const { return probs_[row * cols_ + col]; }
  const std::vector<double>& probs() const { return probs_; }

  // Same matrix attached to different axis labels (sizes must match).
  Kernel renamed(std::vector<std::string> from_labels, std::vector<std::string> to_labels) const;

 private:
  std::vector<Alphabet> from_, to_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> probs_;
};

// Multi-variable tensor distribution with named axes, stored row-major
// (last axis fastest). Immutable after construction.
class JointPmf {
 public:
  JointPmf(std::vector<Alphabet> axes, std::vector<double> values);

  explicit JointPmf(const Pmf& p);

  const std::vector<Alphabet>& axes() const { return axes_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  int axis_index(std::string_view label) const;      // -1 if absent
  int require_axis(std::string_view label) const;    // throws StructuralError
  const std::vector<std::size_t>& strides() const { return strides_; }

  double at_flat(std::size_t i) const { return values_[i]; }

 private:
  std::vector<Alphabet> axes_;
  std::vector<std::size_t> strides_;
  std::vector<double> values_;
};

// ---- information functionals (all in bits) ----

// Total variation distance stored as half the l1 norm; in [0, 1].
double tv_distance(const JointPmf& p, const JointPmf& q);

// Kullback-Leibler divergence in bits; returns +infinity when support(p)
// is not contained in support(q).
double kl_divergence(const JointPmf& p, const JointPmf& q);

double entropy(const JointPmf& p, std::span<const std::string> axes);
double entropy_given(const JointPmf& p, std::span<const std::string> target,
                     std::span<const std::string> given);
double mutual_information(const JointPmf& p, std::span<const std::string> a,
                          std::span<const std::string> b);
double mi_given(const JointPmf& p, std::span<const std::string> a,
                std::span<const std::string> b, std::span<const std::string> c);

// Convenience overloads for brace-list call sites.
double entropy(const JointPmf& p, std::initializer_list<std::string> axes);
double entropy_given(const JointPmf& p, std::initializer_list<std::string> target,
                     std::initializer_list<std::string> given);
double mutual_information(const JointPmf& p, std::initializer_list<std::string> a,
                          std::initializer_list<std::string> b);
double mi_given(const JointPmf& p, std::initializer_list<std::string> a,
                std::initializer_list<std::string> b, std::initializer_list<std::string> c);

// ---- structural operations ----

// Keeps the listed axes (in the listed order) and sums out the rest.
JointPmf marginalize(const JointPmf& p, std::span<const std::string> keep);
JointPmf marginalize(const JointPmf& p, std::initializer_list<std::string> keep);

struct ConditionDiag {
  int zero_rows = 0;  // rows backed by a zero-probability event (uniform fallback)
};

// P(target | given) as a Kernel; zero-probability rows become uniform and are
// counted in `diag`.
Kernel condition(const JointPmf& p, std::span<const std::string> target,
                 std::span<const std::string> given, ConditionDiag* diag = nullptr);
Kernel condition(const JointPmf& p, std::initializer_list<std::string> target,
                 std::initializer_list<std::string> given, ConditionDiag* diag = nullptr);

using ChainFactor = std::variant<Pmf, Kernel>;

// Exact product of factors wired by axis label: a Pmf introduces its axis,
// a Kernel conditions on already-introduced axes and introduces its `to` axes.
JointPmf compose_chain(std::span<const ChainFactor> factors);
JointPmf compose_chain(std::initializer_list<ChainFactor> factors);

// Same, but growing an existing joint.
JointPmf extend_chain(const JointPmf& base, std::span<const ChainFactor> factors);
JointPmf extend_chain(const JointPmf& base, std::initializer_list<ChainFactor> factors);

// n-fold product distribution. Axis t of variable A is labeled "A.t";
// ordering is symbol-major: (A.0, B.0, ..., A.1, B.1, ...).
JointPmf iid_power(const JointPmf& p, int n);

// Reshapes axis `label` of size base^n into n axes "<base_label>.0" ...
// "<base_label>.{n-1}" (pure relabeling: sequence indices are row-major).
JointPmf split_sequence_axis(const JointPmf& p, std::string_view label,
                             const Alphabet& symbol, int n);

JointPmf outer_product(const JointPmf& a, const JointPmf& b);

}  // namespace sscoord
