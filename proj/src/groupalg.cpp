#include <mfour/error.hpp>
#include <mfour/finite_field.hpp>
#include <mfour/groupalg.hpp>
#include <mfour/rational.hpp>

#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace mfour {

std::int64_t prime_power_modulus(int ell, int r) {
  if (!is_prime(ell)) fail(ErrorCode::invalid_argument, "ell must be prime, got " + std::to_string(ell));
  if (r < 1) fail(ErrorCode::invalid_argument, "r must be positive");
  std::int64_t m = 1;
  for (int i = 0; i < r; ++i) {
    if (m > (std::int64_t{1} << 40) / ell) fail(ErrorCode::size_guard, "ell^r too large");
    m *= ell;
  }
  return m;
}

namespace {

std::int64_t reduce(std::int64_t v, std::int64_t m) { return ((v % m) + m) % m; }

void check_compatible(const GroupAlgebraElem& a, const GroupAlgebraElem& b) {
  if (a.ell() != b.ell() || a.r() != b.r() || a.n() != b.n())
    fail(ErrorCode::mismatch, "group algebra parameters differ: (" + std::to_string(a.ell()) + "," + std::to_string(a.r()) +
                                  "," + std::to_string(a.n()) + ") vs (" + std::to_string(b.ell()) + "," +
                                  std::to_string(b.r()) + "," + std::to_string(b.n()) + ")");
}

}  // namespace

GroupAlgebraElem::GroupAlgebraElem(int ell, int r, int n) : ell_(ell), r_(r), mod_(prime_power_modulus(ell, r)) {
  if (n < 1) fail(ErrorCode::invalid_argument, "n must be positive");
  c_.assign(static_cast<std::size_t>(n), 0);
}

GroupAlgebraElem::GroupAlgebraElem(int ell, int r, int n, std::vector<std::int64_t> coeffs) : GroupAlgebraElem(ell, r, n) {
  if (coeffs.size() != static_cast<std::size_t>(n))
    fail(ErrorCode::invalid_argument, "expected " + std::to_string(n) + " coefficients, got " + std::to_string(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) c_[i] = reduce(coeffs[i], mod_);
}

GroupAlgebraElem GroupAlgebraElem::one(int ell, int r, int n) { return t(ell, r, n, 0); }

GroupAlgebraElem GroupAlgebraElem::t(int ell, int r, int n, long power) {
  GroupAlgebraElem e(ell, r, n);
  e.c_[static_cast<std::size_t>(reduce(power, n))] = 1;
  return e;
}

GroupAlgebraElem GroupAlgebraElem::norm_element(int ell, int r, int n) {
  return GroupAlgebraElem(ell, r, n, std::vector<std::int64_t>(static_cast<std::size_t>(n), 1));
}

bool GroupAlgebraElem::is_zero() const {
  for (auto v : c_)
    if (v != 0) return false;
  return true;
}

std::int64_t GroupAlgebraElem::augmentation() const {
  std::int64_t s = 0;
  for (auto v : c_) s = (s + v) % mod_;
  return s;
}

GroupAlgebraElem operator+(const GroupAlgebraElem& a, const GroupAlgebraElem& b) {
  check_compatible(a, b);
  GroupAlgebraElem out = a;
  for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = (a.c_[i] + b.c_[i]) % a.mod_;
  return out;
}

GroupAlgebraElem operator-(const GroupAlgebraElem& a, const GroupAlgebraElem& b) {
  check_compatible(a, b);
  GroupAlgebraElem out = a;
  for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = reduce(a.c_[i] - b.c_[i], a.mod_);
  return out;
}

GroupAlgebraElem operator*(const GroupAlgebraElem& a, const GroupAlgebraElem& b) {
  check_compatible(a, b);
  GroupAlgebraElem out(a.ell_, a.r_, a.n());
  std::size_t n = a.c_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t k = (i + j) % n;
      out.c_[k] = (out.c_[k] + a.c_[i] * b.c_[j]) % a.mod_;
    }
  }
  return out;
}

GroupAlgebraElem GroupAlgebraElem::scaled(std::int64_t c) const {
  GroupAlgebraElem out = *this;
  c = reduce(c, mod_);
  for (auto& v : out.c_) v = (v * c) % mod_;
  return out;
}

GroupAlgebraElem GroupAlgebraElem::pow(unsigned k) const {
  GroupAlgebraElem out = one(ell_, r_, n());
  GroupAlgebraElem base = *this;
  while (k) {
    if (k & 1u) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

bool operator==(const GroupAlgebraElem& a, const GroupAlgebraElem& b) {
  return a.ell_ == b.ell_ && a.r_ == b.r_ && a.c_ == b.c_;
}

std::string GroupAlgebraElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c_[i];
      continue;
    }
    if (c_[i] != 1) os << c_[i] << "*";
    os << "t";
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

GroupAlgebraElem transition(const GroupAlgebraElem& a, int n_target) {
  if (n_target < 1 || a.n() % n_target != 0)
    fail(ErrorCode::invalid_argument, std::to_string(n_target) + " does not divide " + std::to_string(a.n()));
  std::vector<std::int64_t> c(static_cast<std::size_t>(n_target), 0);
  for (int i = 0; i < a.n(); ++i) c[static_cast<std::size_t>(i % n_target)] += a.coeff(i);
  return GroupAlgebraElem(a.ell(), a.r(), n_target, std::move(c));
}

namespace {

// Determinant mod a prime of the multiplication matrix of a in F_ell[Z/n].
bool invertible_mod_ell(const std::vector<std::int64_t>& coeffs, int ell) {
  std::size_t n = coeffs.size();
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m[(i + j) % n][j] = reduce(coeffs[i], ell);
  auto inv = [ell](std::int64_t v) {
    std::int64_t r = 1, b = v, e = ell - 2;
    while (e > 0) {
      if (e & 1) r = r * b % ell;
      b = b * b % ell;
      e >>= 1;
    }
    return r;
  };
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return false;
    std::swap(m[p], m[c]);
    std::int64_t iv = inv(m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      std::int64_t f = m[r][c] * iv % ell;
      for (std::size_t k = c; k < n; ++k) m[r][k] = reduce(m[r][k] - f * m[c][k], ell);
    }
  }
  return true;
}

// Diagonalizes an integer matrix by unimodular row and column operations,
// tracking the column transform Q with A Q = P^-1 D.
struct IntDiagonal {
  std::vector<BigInt> d;
  std::vector<std::vector<BigInt>> q;  // q[row][col]
};

IntDiagonal diagonalize(std::vector<std::vector<BigInt>> a) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<std::vector<BigInt>> q(cols, std::vector<BigInt>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) q[i][i] = 1;
  auto col_axpy = [&](std::size_t dst, std::size_t src, const BigInt& f) {  // col dst -= f col src
    for (auto& row : a) row[dst] -= f * row[src];
    for (auto& row : q) row[dst] -= f * row[src];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : q) std::swap(row[x], row[y]);
  };
  std::size_t t = 0;
  for (; t < rows && t < cols; ++t) {
    // Pivot: any nonzero entry in the lower-right block.
    bool found = false;
    for (std::size_t i = t; i < rows && !found; ++i)
      for (std::size_t j = t; j < cols && !found; ++j)
        if (a[i][j] != 0) {
          std::swap(a[i], a[t]);
          col_swap(j, t);
          found = true;
        }
    if (!found) break;
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt f = a[i][t] / a[t][t];
        for (std::size_t k = t; k < cols; ++k) a[i][k] -= f * a[t][k];
        if (a[i][t] != 0) {
          std::swap(a[i], a[t]);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt f = a[t][j] / a[t][t];
        col_axpy(j, t, f);
        if (a[t][j] != 0) {
          col_swap(j, t);
          dirty = true;
        }
      }
      if (!dirty) break;
    }
  }
  IntDiagonal out;
  for (std::size_t i = 0; i < cols; ++i) out.d.push_back(i < t ? BigInt(abs(a[i][i])) : BigInt(0));
  out.q = std::move(q);
  return out;
}

// Generators of {x in R[Z/m] : (t - 1) x = 0}, via the integer diagonal form
// of multiplication by t - 1.
std::vector<GroupAlgebraElem> annihilator_of_t_minus_1(int ell, int r, int m) {
  std::int64_t mod = prime_power_modulus(ell, r);
  std::vector<std::vector<BigInt>> a(static_cast<std::size_t>(m), std::vector<BigInt>(static_cast<std::size_t>(m), 0));
  for (int j = 0; j < m; ++j) {
    a[static_cast<std::size_t>((j + 1) % m)][static_cast<std::size_t>(j)] += 1;
    a[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] -= 1;
  }
  IntDiagonal dg = diagonalize(std::move(a));
  std::vector<GroupAlgebraElem> gens;
  BigInt bmod(static_cast<long>(mod));
  for (std::size_t i = 0; i < dg.d.size(); ++i) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), dg.d[i].get_mpz_t(), bmod.get_mpz_t());
    BigInt scale = bmod / g;
    if (scale == bmod) continue;  // contributes only multiples of ell^r
    std::vector<std::int64_t> c(static_cast<std::size_t>(m));
    for (std::size_t row = 0; row < c.size(); ++row) {
      BigInt v = dg.q[row][i] * scale;
      BigInt red;
      mpz_mod(red.get_mpz_t(), v.get_mpz_t(), bmod.get_mpz_t());
      c[row] = red.get_si();
    }
    GroupAlgebraElem e(ell, r, m, std::move(c));
    if (!e.is_zero()) gens.push_back(std::move(e));
  }
  return gens;
}

}  // namespace

bool is_unit(const GroupAlgebraElem& a) { return invertible_mod_ell(a.coeffs(), a.ell()); }

std::vector<long> frobenius_unit(int q, int n) {
  if (q < 2 || n < 1) fail(ErrorCode::invalid_argument, "frobenius_unit needs q >= 2 and n >= 1");
  std::vector<long> u(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < q; ++a) ++u[static_cast<std::size_t>(a % n)];
  return u;
}

TwistedTensor twisted_tensor(const TwistedRankOneModule& a, const TwistedRankOneModule& b) {
  if (a.level < 1 || b.level < 1) fail(ErrorCode::invalid_argument, "levels must be positive");
  if (a.level % b.level != 0)
    fail(ErrorCode::mismatch, "level " + std::to_string(b.level) + " does not divide level " + std::to_string(a.level));
  TwistedTensor out;
  out.module = {b.level, a.twist + b.twist};
  return out;
}

CheckOutcome augmentation_kernel_check(int ell, int r, int n) {
  prime_power_modulus(ell, r);
  if (n < 1) fail(ErrorCode::invalid_argument, "n must be positive");
  Json w;
  w["ell"] = ell;
  w["r"] = r;
  w["n"] = n;
  bool ok = true;
  auto one = GroupAlgebraElem::one(ell, r, n);
  auto tm1 = GroupAlgebraElem::t(ell, r, n) - one;

  // The ideal lies in the kernel: (t - 1) t^i has augmentation 0.
  for (int i = 0; i < n; ++i)
    if ((tm1 * GroupAlgebraElem::t(ell, r, n, i)).augmentation() != 0) ok = false;

  // The kernel is spanned by t^i - 1 = (t - 1)(1 + t + ... + t^{i-1}).
  Json witnesses = Json::array();
  for (int i = 1; i < n; ++i) {
    GroupAlgebraElem geo(ell, r, n);
    for (int j = 0; j < i; ++j) geo = geo + GroupAlgebraElem::t(ell, r, n, j);
    auto lhs = GroupAlgebraElem::t(ell, r, n, i) - one;
    bool match = tm1 * geo == lhs;
    ok = ok && match;
    witnesses.push_back(Json{{"element", lhs.to_string()}, {"cofactor", geo.to_string()}, {"verified", match}});
  }
  w["kernel_witnesses"] = witnesses;

  // Independent count when the ring is small enough to enumerate.
  std::int64_t mod = prime_power_modulus(ell, r);
  double size = 1;
  for (int i = 0; i < n; ++i) size *= static_cast<double>(mod);
  if (size <= 1e6) {
    std::int64_t total = static_cast<std::int64_t>(size);
    std::int64_t kernel = 0;
    std::set<std::vector<std::int64_t>> image;
    std::vector<std::int64_t> c(static_cast<std::size_t>(n), 0);
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::int64_t rest = idx;
      for (auto& v : c) {
        v = rest % mod;
        rest /= mod;
      }
      GroupAlgebraElem x(ell, r, n, c);
      if (x.augmentation() == 0) ++kernel;
      image.insert((tm1 * x).coeffs());
    }
    w["kernel_size"] = kernel;
    w["ideal_size"] = image.size();
    ok = ok && kernel == static_cast<std::int64_t>(image.size());
  }
  return CheckOutcome::from_bool(ok, w);
}

CheckOutcome pro_nzd_check(int ell, int r, int n, int k_max) {
  prime_power_modulus(ell, r);
  if (n < 1) fail(ErrorCode::invalid_argument, "n must be positive");
  if (k_max < 0) k_max = r;
  if (k_max > r + 3) fail(ErrorCode::size_guard, "k_max above r + 3");
  Json w;
  w["ell"] = ell;
  w["r"] = r;
  w["n"] = n;
  w["ell_divides_n"] = n % ell == 0;
  Json levels = Json::array();
  bool vanish_at_r = false, survives_below = r == 0;
  for (int k = 0; k <= std::max(k_max, r); ++k) {
    long m = n;
    for (int i = 0; i < k; ++i) m *= ell;
    if (m > 4096) fail(ErrorCode::size_guard, "level " + std::to_string(m) + " too large");
    auto gens = annihilator_of_t_minus_1(ell, r, static_cast<int>(m));
    Json entry;
    entry["k"] = k;
    entry["m"] = m;
    Json ann = Json::array(), img = Json::array();
    bool all_zero = true;
    for (const auto& g : gens) {
      auto pushed = transition(g, n);
      ann.push_back(m <= 16 ? g.to_string() : "(" + std::to_string(m) + " coefficients)");
      img.push_back(pushed.to_string());
      if (!pushed.is_zero()) all_zero = false;
    }
    entry["annihilator"] = ann;
    entry["image"] = img;
    entry["image_vanishes"] = all_zero;
    levels.push_back(entry);
    if (k == r) vanish_at_r = all_zero;
    if (k == r - 1) survives_below = !all_zero;
  }
  w["levels"] = levels;
  w["negative_control"] = survives_below;
  return CheckOutcome::from_bool(vanish_at_r && survives_below, w);
}

CheckOutcome unit_surjectivity_check(int ell, int r, int n, int n_prime) {
  std::int64_t mod = prime_power_modulus(ell, r);
  if (n < 1 || n_prime < 1 || n_prime % n != 0)
    fail(ErrorCode::invalid_argument, std::to_string(n) + " must divide " + std::to_string(n_prime));
  if (n_prime > 6 || mod > 9)
    fail(ErrorCode::size_guard, "enumeration limited to n' <= 6 and ell^r <= 9");

  // Units of F_ell[Z/n'], indexed by residues mod ell.
  std::int64_t small = 1;
  for (int i = 0; i < n_prime; ++i) small *= ell;
  std::vector<char> unit_mod_ell(static_cast<std::size_t>(small));
  std::vector<std::int64_t> c(static_cast<std::size_t>(n_prime));
  for (std::int64_t idx = 0; idx < small; ++idx) {
    std::int64_t rest = idx;
    for (auto& v : c) {
      v = rest % ell;
      rest /= ell;
    }
    unit_mod_ell[static_cast<std::size_t>(idx)] = invertible_mod_ell(c, ell);
  }

  std::int64_t total = 1;
  for (int i = 0; i < n_prime; ++i) total *= mod;
  std::set<std::vector<std::int64_t>> image;
  std::int64_t source_units = 0;
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t rest = idx, key = 0, place = 1;
    for (auto& v : c) {
      v = rest % mod;
      rest /= mod;
      key += (v % ell) * place;
      place *= ell;
    }
    if (!unit_mod_ell[static_cast<std::size_t>(key)]) continue;
    ++source_units;
    image.insert(transition(GroupAlgebraElem(ell, r, n_prime, c), n).coeffs());
  }

  std::int64_t target_total = 1;
  for (int i = 0; i < n; ++i) target_total *= mod;
  std::int64_t target_units = 0;
  Json missing = Json::array();
  std::vector<std::int64_t> d(static_cast<std::size_t>(n));
  for (std::int64_t idx = 0; idx < target_total; ++idx) {
    std::int64_t rest = idx;
    for (auto& v : d) {
      v = rest % mod;
      rest /= mod;
    }
    GroupAlgebraElem y(ell, r, n, d);
    if (!is_unit(y)) continue;
    ++target_units;
    if (!image.count(y.coeffs()) && missing.size() < 5) missing.push_back(y.to_string());
  }
  Json w;
  w["ell"] = ell;
  w["r"] = r;
  w["n"] = n;
  w["n_prime"] = n_prime;
  w["source_units"] = source_units;
  w["target_units"] = target_units;
  w["image_size"] = image.size();
  w["missing"] = missing;
  return CheckOutcome::from_bool(missing.empty() && static_cast<std::int64_t>(image.size()) == target_units, w);
}

CheckOutcome twisted_tensor_check(int ell, int r, int m, int n) {
  prime_power_modulus(ell, r);
  if (m < 1 || n < 1 || m % n != 0)
    fail(ErrorCode::mismatch, "level " + std::to_string(n) + " does not divide level " + std::to_string(m));
  Json w;
  w["ell"] = ell;
  w["r"] = r;
  w["m"] = m;
  w["n"] = n;
  bool ok = true;
  Json cases = Json::array();
  // Nonnegative twists are realized by (t - 1)^i inside A^0; the tensor
  // generator must match the product after transition to level n.
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; j <= 2; ++j) {
      auto t = twisted_tensor({m, i}, {n, j});
      auto gm = (GroupAlgebraElem::t(ell, r, m) - GroupAlgebraElem::one(ell, r, m)).pow(static_cast<unsigned>(i));
      auto gn = (GroupAlgebraElem::t(ell, r, n) - GroupAlgebraElem::one(ell, r, n)).pow(static_cast<unsigned>(j));
      auto expected = (GroupAlgebraElem::t(ell, r, n) - GroupAlgebraElem::one(ell, r, n))
                          .pow(static_cast<unsigned>(t.module.twist));
      bool match = transition(gm, n) * gn == expected && t.module.level == n;
      ok = ok && match;
      cases.push_back(Json{{"left", "A^" + std::to_string(i) + "_" + std::to_string(m)},
                           {"right", "A^" + std::to_string(j) + "_" + std::to_string(n)},
                           {"result", "A^" + std::to_string(t.module.twist) + "_" + std::to_string(t.module.level)},
                           {"realized", match}});
    }
  }
  // Compatibility with transitions to every divisor of n.
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    auto a = twisted_tensor(twisted_tensor({m, 1}, {n, -1}).module, {d, 0});
    auto b = twisted_tensor({m, 1}, {d, -1});
    if (a.module.level != b.module.level || a.module.twist != b.module.twist) ok = false;
  }
  bool refused = false;
  if (n > 1) {
    try {
      twisted_tensor({n, 0}, {m * n + 1, 0});
    } catch (const Error& e) {
      refused = e.code() == ErrorCode::mismatch;
    }
  } else {
    refused = true;
  }
  w["cases"] = cases;
  w["incompatible_levels_refused"] = refused;
  w["tate"] = "(-1)[-2]";
  return CheckOutcome::from_bool(ok && refused, w);
}

}  // namespace mfour
