#include "sscoord/prob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace sscoord {

namespace {

double log2_safe(double x) { return std::log2(x); }

void check_axes_valid(std::span<const Alphabet> axes) {
  std::set<std::string> seen;
  for (const auto& a : axes) {
    if (a.size < 1) throw StructuralError("alphabet '" + a.label + "' must have size >= 1");
    if (a.label.empty()) throw StructuralError("alphabet label must be nonempty");
    if (!seen.insert(a.label).second)
      throw StructuralError("duplicate axis label '" + a.label + "'");
  }
}

void check_budget(std::size_t entries, const char* what) {
  if (entries > kTensorBudget)
    throw CapacityError(std::string(what) + " needs " + std::to_string(entries) +
                        " entries, exceeding the tensor budget of 2^24");
}

std::vector<std::size_t> row_major_strides(std::span<const Alphabet> axes) {
  std::vector<std::size_t> s(axes.size());
  std::size_t acc = 1;
  for (std::size_t i = axes.size(); i-- > 0;) {
    s[i] = acc;
    acc *= static_cast<std::size_t>(axes[i].size);
  }
  return s;
}

// Increments a mixed-radix odometer; returns false after the last index.
bool advance(std::vector<int>& idx, std::span<const Alphabet> axes) {
  for (std::size_t i = idx.size(); i-- > 0;) {
    if (++idx[i] < axes[i].size) return true;
    idx[i] = 0;
  }
  return false;
}

std::vector<int> axis_positions(const JointPmf& p, std::span<const std::string> labels) {
  std::vector<int> pos;
  pos.reserve(labels.size());
  std::set<std::string_view> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw StructuralError("axis '" + l + "' listed twice");
    pos.push_back(p.require_axis(l));
  }
  return pos;
}

void check_disjoint(std::span<const std::string> a, std::span<const std::string> b,
                    const char* what) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (x == y) throw StructuralError(std::string(what) + ": axis sets overlap on '" + x + "'");
}

std::vector<std::string> concat(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::string> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

std::size_t product_size(std::span<const Alphabet> axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::size_t>(a.size);
  return n;
}

// ---- Pmf ----

Pmf::Pmf(Alphabet alphabet, std::vector<double> probs)
    : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
  if (alphabet_.size < 1) throw StructuralError("pmf alphabet must have size >= 1");
  if (probs_.size() != static_cast<std::size_t>(alphabet_.size))
    throw StructuralError("pmf '" + alphabet_.label + "' has wrong number of entries");
  double sum = 0.0;
  for (double v : probs_) {
    if (!(v >= 0.0)) throw StructuralError("pmf '" + alphabet_.label + "' has a negative entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTol)
    throw StructuralError("pmf '" + alphabet_.label + "' sums to " + std::to_string(sum));
}

Pmf Pmf::uniform(const Alphabet& alphabet) {
  return Pmf(alphabet,
             std::vector<double>(static_cast<std::size_t>(alphabet.size), 1.0 / alphabet.size));
}

Pmf Pmf::point_mass(const Alphabet& alphabet, int symbol) {
  std::vector<double> v(static_cast<std::size_t>(alphabet.size), 0.0);
  v.at(static_cast<std::size_t>(symbol)) = 1.0;
  return Pmf(alphabet, std::move(v));
}

Pmf Pmf::bernoulli(std::string label, double p1) {
  return Pmf(Alphabet{std::move(label), 2}, {1.0 - p1, p1});
}

// ---- Kernel ----

Kernel::Kernel(std::vector<Alphabet> from, std::vector<Alphabet> to, std::vector<double> probs)
    : from_(std::move(from)), to_(std::move(to)), probs_(std::move(probs)) {
  check_axes_valid(from_);
  check_axes_valid(to_);
  std::vector<Alphabet> all(from_.begin(), from_.end());
  all.insert(all.end(), to_.begin(), to_.end());
  check_axes_valid(all);
  rows_ = product_size(from_);
  cols_ = product_size(to_);
  if (probs_.size() != rows_ * cols_) throw StructuralError("kernel matrix has wrong shape");
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) {
      double v = probs_[r * cols_ + c];
      if (!(v >= 0.0)) throw StructuralError("kernel has a negative entry");
      sum += v;
    }
    // all-zero rows mark unreachable conditioning events
    if (std::abs(sum - 1.0) > kSumTol && std::abs(sum) > kSumTol)
      throw StructuralError("kernel row " + std::to_string(r) + " sums to " + std::to_string(sum));
  }
}

Kernel Kernel::identity(const Alphabet& from, std::string to_label) {
  std::size_t n = static_cast<std::size_t>(from.size);
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
  return Kernel({from}, {Alphabet{std::move(to_label), from.size}}, std::move(m));
}

Kernel Kernel::bsc(std::string from_label, std::string to_label, double crossover) {
  return Kernel({Alphabet{std::move(from_label), 2}}, {Alphabet{std::move(to_label), 2}},
                {1.0 - crossover, crossover, crossover, 1.0 - crossover});
}

Kernel Kernel::constant(std::vector<Alphabet> from, const Pmf& row) {
  std::size_t rows = product_size(from);
  std::vector<double> m;
  m.reserve(rows * row.probs().size());
  for (std::size_t r = 0; r < rows; ++r)
    m.insert(m.end(), row.probs().begin(), row.probs().end());
  return Kernel(std::move(from), {row.alphabet()}, std::move(m));
}

Kernel Kernel::renamed(std::vector<std::string> from_labels,
                       std::vector<std::string> to_labels) const {
  if (from_labels.size() != from_.size() || to_labels.size() != to_.size())
    throw StructuralError("renamed: label count mismatch");
  std::vector<Alphabet> nf = from_, nt = to_;
  for (std::size_t i = 0; i < nf.size(); ++i) nf[i].label = std::move(from_labels[i]);
  for (std::size_t i = 0; i < nt.size(); ++i) nt[i].label = std::move(to_labels[i]);
  return Kernel(std::move(nf), std::move(nt), probs_);
}

// ---- JointPmf ----

JointPmf::JointPmf(std::vector<Alphabet> axes, std::vector<double> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  check_axes_valid(axes_);
  std::size_t n = product_size(axes_);
  check_budget(n, "joint pmf");
  if (values_.size() != n) throw StructuralError("joint pmf tensor has wrong shape");
  double sum = 0.0;
  for (double v : values_) {
    if (!(v >= 0.0)) throw StructuralError("joint pmf has a negative entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTol)
    throw StructuralError("joint pmf sums to " + std::to_string(sum));
  strides_ = row_major_strides(axes_);
}

JointPmf::JointPmf(const Pmf& p) : JointPmf({p.alphabet()}, p.probs()) {}

int JointPmf::axis_index(std::string_view label) const {
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i].label == label) return static_cast<int>(i);
  return -1;
}

int JointPmf::require_axis(std::string_view label) const {
  int i = axis_index(label);
  if (i < 0) throw StructuralError("no axis labeled '" + std::string(label) + "'");
  return i;
}

// ---- distances ----

static void check_same_shape(const JointPmf& p, const JointPmf& q) {
  if (p.axes() != q.axes()) throw StructuralError("distributions have different axes");
}

double tv_distance(const JointPmf& p, const JointPmf& q) {
  check_same_shape(p, q);
  double l1 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) l1 += std::abs(p.at_flat(i) - q.at_flat(i));
  return 0.5 * l1;
}

double kl_divergence(const JointPmf& p, const JointPmf& q) {
  check_same_shape(p, q);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double pi = p.at_flat(i), qi = q.at_flat(i);
    if (pi <= 0.0) continue;
    if (qi <= 0.0) return std::numeric_limits<double>::infinity();
    d += pi * log2_safe(pi / qi);
  }
  return std::max(d, 0.0);
}

// ---- entropies ----

static double entropy_of_values(std::span<const double> v) {
  double h = 0.0;
  for (double p : v)
    if (p > 0.0) h -= p * log2_safe(p);
  return h;
}

double entropy(const JointPmf& p, std::span<const std::string> axes) {
  if (axes.empty()) throw StructuralError("entropy: empty axis set");
  JointPmf m = marginalize(p, axes);
  return entropy_of_values(m.values());
}

double entropy_given(const JointPmf& p, std::span<const std::string> target,
                     std::span<const std::string> given) {
  if (target.empty()) throw StructuralError("entropy_given: empty target axis set");
  check_disjoint(target, given, "entropy_given");
  if (given.empty()) return entropy(p, target);
  auto all = concat(target, given);
  return entropy(p, all) - entropy(p, given);
}

double mutual_information(const JointPmf& p, std::span<const std::string> a,
                          std::span<const std::string> b) {
  check_disjoint(a, b, "mutual_information");
  auto ab = concat(a, b);
  return entropy(p, a) + entropy(p, b) - entropy(p, ab);
}

double mi_given(const JointPmf& p, std::span<const std::string> a,
                std::span<const std::string> b, std::span<const std::string> c) {
  check_disjoint(a, b, "mi_given");
  check_disjoint(a, c, "mi_given");
  check_disjoint(b, c, "mi_given");
  auto ac = concat(a, c);
  auto bc = concat(b, c);
  auto abc = concat(a, bc);
  return entropy(p, ac) + entropy(p, bc) - entropy(p, abc) - entropy(p, c);
}

double entropy(const JointPmf& p, std::initializer_list<std::string> axes) {
  std::vector<std::string> v(axes);
  return entropy(p, std::span<const std::string>(v));
}
double entropy_given(const JointPmf& p, std::initializer_list<std::string> target,
                     std::initializer_list<std::string> given) {
  std::vector<std::string> t(target), g(given);
  return entropy_given(p, std::span<const std::string>(t), std::span<const std::string>(g));
}
double mutual_information(const JointPmf& p, std::initializer_list<std::string> a,
                          std::initializer_list<std::string> b) {
  std::vector<std::string> va(a), vb(b);
  return mutual_information(p, std::span<const std::string>(va), std::span<const std::string>(vb));
}
double mi_given(const JointPmf& p, std::initializer_list<std::string> a,
                std::initializer_list<std::string> b, std::initializer_list<std::string> c) {
  std::vector<std::string> va(a), vb(b), vc(c);
  return mi_given(p, std::span<const std::string>(va), std::span<const std::string>(vb),
                  std::span<const std::string>(vc));
}

// ---- marginalize ----

JointPmf marginalize(const JointPmf& p, std::span<const std::string> keep) {
  if (keep.empty()) throw StructuralError("marginalize: empty axis set");
  std::vector<int> pos = axis_positions(p, keep);

  std::vector<Alphabet> out_axes;
  out_axes.reserve(pos.size());
  for (int i : pos) out_axes.push_back(p.axes()[static_cast<std::size_t>(i)]);
  auto out_strides = row_major_strides(out_axes);

  // out-index contribution of each source axis (0 when summed out)
  std::vector<std::size_t> contrib(p.axes().size(), 0);
  for (std::size_t k = 0; k < pos.size(); ++k)
    contrib[static_cast<std::size_t>(pos[k])] = out_strides[k];

  std::vector<double> out(product_size(out_axes), 0.0);
  std::vector<int> idx(p.axes().size(), 0);
  std::size_t flat = 0, oidx = 0;
  const auto& axes = p.axes();
  while (true) {
    out[oidx] += p.at_flat(flat);
    // odometer with incremental output index
    std::size_t i = axes.size();
    while (i-- > 0) {
      if (++idx[i] < axes[i].size) {
        oidx += contrib[i];
        break;
      }
      idx[i] = 0;
      oidx -= contrib[i] * static_cast<std::size_t>(axes[i].size - 1);
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++flat;
  }
  return JointPmf(std::move(out_axes), std::move(out));
}

JointPmf marginalize(const JointPmf& p, std::initializer_list<std::string> keep) {
  std::vector<std::string> v(keep);
  return marginalize(p, std::span<const std::string>(v));
}

// ---- condition ----

Kernel condition(const JointPmf& p, std::span<const std::string> target,
                 std::span<const std::string> given, ConditionDiag* diag) {
  if (target.empty() || given.empty())
    throw StructuralError("condition: target and given axis sets must be nonempty");
  check_disjoint(target, given, "condition");
  auto order = concat(given, target);
  JointPmf m = marginalize(p, order);  // axes: given..., target...

  std::vector<Alphabet> from(m.axes().begin(), m.axes().begin() + static_cast<long>(given.size()));
  std::vector<Alphabet> to(m.axes().begin() + static_cast<long>(given.size()), m.axes().end());
  std::size_t rows = product_size(from), cols = product_size(to);

  std::vector<double> mat(rows * cols, 0.0);
  int zero_rows = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    double mass = 0.0;
    for (std::size_t c = 0; c < cols; ++c) mass += m.at_flat(r * cols + c);
    if (mass <= 0.0) {
      ++zero_rows;
      for (std::size_t c = 0; c < cols; ++c) mat[r * cols + c] = 1.0 / static_cast<double>(cols);
    } else {
      for (std::size_t c = 0; c < cols; ++c) mat[r * cols + c] = m.at_flat(r * cols + c) / mass;
    }
  }
  if (diag) diag->zero_rows = zero_rows;
  return Kernel(std::move(from), std::move(to), std::move(mat));
}

Kernel condition(const JointPmf& p, std::initializer_list<std::string> target,
                 std::initializer_list<std::string> given, ConditionDiag* diag) {
  std::vector<std::string> t(target), g(given);
  return condition(p, std::span<const std::string>(t), std::span<const std::string>(g), diag);
}

// ---- compose_chain ----

static JointPmf compose_core(std::vector<Alphabet> axes, std::vector<double> vals,
                             std::span<const ChainFactor> factors) {

  auto extend = [&](std::span<const Alphabet> from_axes, std::span<const Alphabet> to_axes,
                    const std::vector<double>& matrix) {
    // positions of the kernel's from-axes in the current joint
    std::vector<std::size_t> from_pos;
    for (const auto& fa : from_axes) {
      bool found = false;
      for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i].label == fa.label) {
          if (axes[i].size != fa.size)
            throw StructuralError("axis '" + fa.label + "' size mismatch in chain");
          from_pos.push_back(i);
          found = true;
          break;
        }
      }
      if (!found)
        throw StructuralError("chain factor conditions on undefined axis '" + fa.label + "'");
    }
    for (const auto& ta : to_axes) {
      for (const auto& a : axes)
        if (a.label == ta.label)
          throw StructuralError("chain factor reintroduces axis '" + ta.label + "'");
    }

    std::size_t old_n = vals.size();
    std::size_t cols = product_size(to_axes);
    check_budget(old_n * cols, "compose_chain");

    std::vector<double> next(old_n * cols);
    std::vector<int> idx(axes.size(), 0);
    std::size_t flat = 0;
    do {
      std::size_t row = 0;
      for (std::size_t k = 0; k < from_pos.size(); ++k)
        row = row * static_cast<std::size_t>(from_axes[k].size) +
              static_cast<std::size_t>(idx[from_pos[k]]);
      double base = vals[flat];
      for (std::size_t c = 0; c < cols; ++c) next[flat * cols + c] = base * matrix[row * cols + c];
      ++flat;
    } while (advance(idx, axes));

    axes.insert(axes.end(), to_axes.begin(), to_axes.end());
    vals = std::move(next);
  };

  for (const auto& f : factors) {
    if (std::holds_alternative<Pmf>(f)) {
      const Pmf& p = std::get<Pmf>(f);
      std::vector<double> row = p.probs();
      extend({}, std::span<const Alphabet>(&p.alphabet(), 1), row);
    } else {
      const Kernel& k = std::get<Kernel>(f);
      extend(k.from(), k.to(), k.probs());
    }
  }
  return JointPmf(std::move(axes), std::move(vals));
}

JointPmf compose_chain(std::span<const ChainFactor> factors) {
  if (factors.empty()) throw StructuralError("compose_chain: no factors");
  return compose_core({}, {1.0}, factors);
}

JointPmf compose_chain(std::initializer_list<ChainFactor> factors) {
  std::vector<ChainFactor> v(factors);
  return compose_chain(std::span<const ChainFactor>(v));
}

JointPmf extend_chain(const JointPmf& base, std::span<const ChainFactor> factors) {
  return compose_core(base.axes(), base.values(), factors);
}

JointPmf extend_chain(const JointPmf& base, std::initializer_list<ChainFactor> factors) {
  std::vector<ChainFactor> v(factors);
  return extend_chain(base, std::span<const ChainFactor>(v));
}

// ---- products and powers ----

JointPmf outer_product(const JointPmf& a, const JointPmf& b) {
  check_budget(a.size() * b.size(), "outer_product");
  std::vector<Alphabet> axes = a.axes();
  axes.insert(axes.end(), b.axes().begin(), b.axes().end());
  std::vector<double> vals(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) vals[i * b.size() + j] = a.at_flat(i) * b.at_flat(j);
  return JointPmf(std::move(axes), std::move(vals));
}

JointPmf iid_power(const JointPmf& p, int n) {
  if (n < 1) throw StructuralError("iid_power: n must be >= 1");
  std::size_t per = p.size(), total = 1;
  for (int t = 0; t < n; ++t) {
    if (total > kTensorBudget / per)
      throw CapacityError("iid_power(" + std::to_string(n) +
                          ") exceeds the tensor budget of 2^24 entries");
    total *= per;
  }

  auto stamped = [&](int t) {
    std::vector<Alphabet> axes = p.axes();
    for (auto& a : axes) a.label += "." + std::to_string(t);
    return JointPmf(std::move(axes), p.values());
  };

  JointPmf out = stamped(0);
  for (int t = 1; t < n; ++t) out = outer_product(out, stamped(t));
  return out;
}

JointPmf split_sequence_axis(const JointPmf& p, std::string_view label, const Alphabet& symbol,
                             int n) {
  int pos = p.require_axis(label);
  std::size_t expect = 1;
  for (int t = 0; t < n; ++t) expect *= static_cast<std::size_t>(symbol.size);
  if (static_cast<std::size_t>(p.axes()[static_cast<std::size_t>(pos)].size) != expect)
    throw StructuralError("split_sequence_axis: axis size is not base^n");

  std::vector<Alphabet> axes;
  for (std::size_t i = 0; i < p.axes().size(); ++i) {
    if (static_cast<int>(i) == pos) {
      for (int t = 0; t < n; ++t)
        axes.push_back(Alphabet{symbol.label + "." + std::to_string(t), symbol.size});
    } else {
      axes.push_back(p.axes()[i]);
    }
  }
  return JointPmf(std::move(axes), p.values());
}

}  // namespace sscoord
