#include "clonopt/rep_theory.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "clonopt/errors.hpp"

namespace clonopt {

namespace {

using BigInt = boost::multiprecision::cpp_int;

void require_d(const HighestWeight& m, int d) {
  if (m.d() != d)
    throw ConstraintError("weight " + m.str() + " has " + std::to_string(m.d()) + " components, expected d = " +
                          std::to_string(d));
}

void branch(const std::vector<std::int64_t>& base, std::int64_t remaining, std::vector<std::int64_t>& mu,
            std::vector<HighestWeight>& out) {
  const std::size_t k = mu.size();
  const std::size_t d = base.size();
  if (k + 1 == d) {
    if (k > 0 && remaining > checked_sub(base[k - 1], base[k])) return;
    std::vector<std::int64_t> w(base);
    for (std::size_t j = 0; j < k; ++j) w[j] = checked_add(w[j], mu[j]);
    w[k] = checked_add(w[k], remaining);
    out.emplace_back(std::move(w));
    return;
  }
  // μ_1 is bounded only by the total.
  const std::int64_t upper = k == 0 ? remaining : std::min(remaining, checked_sub(base[k - 1], base[k]));
  for (std::int64_t v = upper; v >= 0; --v) {
    mu.push_back(v);
    branch(base, remaining - v, mu, out);
    mu.pop_back();
  }
}

void fill_partitions(int d, std::int64_t remaining, std::int64_t cap, std::vector<std::int64_t>& prefix,
                     std::vector<HighestWeight>& out) {
  const auto k = static_cast<int>(prefix.size());
  if (k == d - 1) {
    if (remaining > cap) return;
    prefix.push_back(remaining);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  const int parts_left = d - k;
  for (std::int64_t v = std::min(cap, remaining); v >= 0; --v) {
    if (v * parts_left < remaining) break;
    prefix.push_back(v);
    fill_partitions(d, remaining - v, v, prefix, out);
    prefix.pop_back();
  }
}

std::int64_t multiplicity(const std::vector<std::int64_t>& m, std::map<std::vector<std::int64_t>, std::int64_t>& memo) {
  if (!HighestWeight::is_dominant(m) || m.back() < 0) return 0;
  if (std::all_of(m.begin(), m.end(), [](std::int64_t v) { return v == 0; })) return 1;
  if (const auto it = memo.find(m); it != memo.end()) return it->second;
  std::int64_t total = 0;
  std::vector<std::int64_t> lowered(m);
  for (std::size_t j = 0; j < m.size(); ++j) {
    --lowered[j];
    total = checked_add(total, multiplicity(lowered, memo));
    ++lowered[j];
  }
  memo.emplace(m, total);
  return total;
}

} // namespace

HighestWeight::HighestWeight(std::vector<std::int64_t> components) : c_(std::move(components)) {
  if (c_.empty()) throw ConstraintError("a highest weight needs at least one component");
  if (!is_dominant(c_)) {
    std::ostringstream os;
    for (std::size_t k = 0; k < c_.size(); ++k) os << (k ? "," : "") << c_[k];
    throw ConstraintError("weight (" + os.str() + ") is not dominant");
  }
}

HighestWeight HighestWeight::symmetric_power(int d, std::int64_t n) {
  if (d < 1) throw ConstraintError("d must be positive");
  std::vector<std::int64_t> c(static_cast<std::size_t>(d), 0);
  c[0] = n;
  return HighestWeight(std::move(c));
}

HighestWeight HighestWeight::parse(const std::string& text) {
  std::vector<std::int64_t> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw ConstraintError("cannot parse weight '" + text + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw ConstraintError("cannot parse weight '" + text + "'");
    c.push_back(value);
  }
  return HighestWeight(std::move(c));
}

bool HighestWeight::is_dominant(const std::vector<std::int64_t>& components) {
  return std::is_sorted(components.rbegin(), components.rend());
}

std::int64_t HighestWeight::total() const {
  std::int64_t sum = 0;
  for (auto v : c_) sum = checked_add(sum, v);
  return sum;
}

HighestWeight HighestWeight::shifted(std::int64_t c) const {
  std::vector<std::int64_t> out(c_);
  for (auto& v : out) v = checked_add(v, c);
  return HighestWeight(std::move(out));
}

std::string HighestWeight::str() const {
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(c_[k]);
  }
  return out;
}

HighestWeight conjugate_weight(const HighestWeight& m) {
  std::vector<std::int64_t> out;
  out.reserve(m.components().size());
  for (auto it = m.components().rbegin(); it != m.components().rend(); ++it) out.push_back(checked_sub(0, *it));
  return HighestWeight(std::move(out));
}

HighestWeight normalized_conjugate_weight(const HighestWeight& m) { return conjugate_weight(m).shifted(m[0]); }

Casimirs casimirs(const HighestWeight& m, int d) {
  require_d(m, d);
  std::int64_t c1 = 0;
  std::int64_t c2 = 0;
  for (int j = 0; j < d; ++j) {
    const auto mj = m[static_cast<std::size_t>(j)];
    c1 = checked_add(c1, mj);
    c2 = checked_add(c2, checked_mul(mj, mj));
    // Σ_{j<k} (m_j − m_k) = Σ_j (d − 2j + 1) m_j with 1-based j.
    c2 = checked_add(c2, checked_mul(d - 2 * (j + 1) + 1, mj));
  }
  const Rational c2_su = Rational(c2) - Rational(checked_mul(c1, c1), d);
  return Casimirs{c1, c2, c2_su};
}

std::int64_t weyl_dimension(const HighestWeight& m, int d) {
  require_d(m, d);
  BigInt num = 1;
  BigInt den = 1;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      num *= BigInt(m[static_cast<std::size_t>(j)]) - BigInt(m[static_cast<std::size_t>(k)]) + (k - j);
      den *= (k - j);
    }
  if (num % den != 0) throw NumericError("Weyl dimension is not an integer for " + m.str());
  const BigInt value = num / den;
  if (value > std::numeric_limits<std::int64_t>::max())
    throw ArithmeticOverflow("Weyl dimension of " + m.str() + " exceeds the 64-bit range");
  return value.convert_to<std::int64_t>();
}

std::vector<HighestWeight> pieri_branch(int n, const HighestWeight& m) {
  if (n < 0) throw ConstraintError("Pieri branching needs N >= 0");
  std::vector<HighestWeight> out;
  std::vector<std::int64_t> mu;
  mu.reserve(m.components().size());
  branch(m.components(), n, mu, out);
  return out;
}

bool contains_sym(const HighestWeight& m, const HighestWeight& n, int big_n) {
  if (m.d() != n.d()) throw ConstraintError("weights have different lengths");
  const auto branches = pieri_branch(big_n, conjugate_weight(n));
  return std::find(branches.begin(), branches.end(), m) != branches.end();
}

std::int64_t fund_power_multiplicity(const HighestWeight& m, int big_m) {
  if (m.total() != big_m || m.components().back() < 0) return 0;
  std::map<std::vector<std::int64_t>, std::int64_t> memo;
  return multiplicity(m.components(), memo);
}

std::int64_t adjoint_multiplicity(int d, int n) {
  if (d < 2) throw ConstraintError("adjoint multiplicity needs d >= 2");
  if (n < 1) throw ConstraintError("adjoint multiplicity needs N >= 1");
  std::vector<std::int64_t> adjoint(static_cast<std::size_t>(d), 1);
  adjoint.front() = 2;
  adjoint.back() = 0;

  const HighestWeight base = normalized_conjugate_weight(HighestWeight::symmetric_power(d, n));
  std::int64_t count = 0;
  for (const auto& w : pieri_branch(n, base)) {
    const std::int64_t shift = w[0] - adjoint[0];
    bool uniform = true;
    for (std::size_t k = 0; k < adjoint.size(); ++k) uniform = uniform && (w[k] - adjoint[k] == shift);
    if (uniform) ++count;
  }
  return count;
}

std::vector<HighestWeight> partitions(int d, int big_m) {
  if (d < 1 || big_m < 0) throw ConstraintError("partitions need d >= 1 and M >= 0");
  std::vector<HighestWeight> out;
  std::vector<std::int64_t> prefix;
  fill_partitions(d, big_m, big_m, prefix, out);
  return out;
}

} // namespace clonopt
