#include <mfour/error.hpp>
#include <mfour/groupalg.hpp>
#include <mfour/matrix.hpp>
#include <mfour/trace.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

namespace mfour {

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

FieldPtr field_for(int q) {
  auto [p, e] = prime_power(q);
  return FiniteField::make(p, e);
}

void require_same_shape(const TraceFunction& a, const TraceFunction& b) {
  if (a.q() != b.q() || a.rank() != b.rank()) fail(ErrorCode::mismatch, "trace functions on different spaces");
}

std::string point_name(const TraceFunction& f, std::size_t i) {
  auto pt = f.point(i);
  if (pt.size() == 1) return f.field()->element_name(pt[0]);
  std::string out = "(";
  for (std::size_t k = 0; k < pt.size(); ++k) out += (k ? "," : "") + f.field()->element_name(pt[k]);
  return out + ")";
}

// First point where a and b differ, as a JSON record; null when equal.
Json first_difference(const TraceFunction& a, const TraceFunction& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return Json{{"point", point_name(a, i)}, {"lhs", a[i].to_string()}, {"rhs", b[i].to_string()}};
  }
  return nullptr;
}

Json table(const TraceFunction& f) {
  Json out = Json::object();
  for (std::size_t i = 0; i < f.size(); ++i) out[point_name(f, i)] = f[i].to_string();
  return out;
}

Json twist_record(const TwistShift& ts, int q) {
  return Json{{"twist", ts.twist}, {"shift", ts.shift}, {"trace_factor", ts.scalar(q).get_str()}};
}

// Restriction of a rank-1 function to F_q^x, extended by zero.
TraceFunction on_Gm(const TraceFunction& f) {
  TraceFunction g = f;
  g[0] = CycScalar(0);
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// TraceFunction

TraceFunction::TraceFunction(FieldPtr field, int rank) : field_(std::move(field)), rank_(rank) {
  if (rank < 1) fail(ErrorCode::invalid_argument, "rank must be at least 1");
  values_.assign(ipow(field_->q(), rank), CycScalar(0));
}

TraceFunction::TraceFunction(FieldPtr field, int rank, std::vector<CycScalar> values)
    : field_(std::move(field)), rank_(rank), values_(std::move(values)) {
  if (values_.size() != ipow(field_->q(), rank)) fail(ErrorCode::mismatch, "value table has the wrong size");
}

TraceFunction TraceFunction::delta(FieldPtr field, int rank, std::size_t index) {
  TraceFunction f(std::move(field), rank);
  f.values_.at(index) = CycScalar(1);
  return f;
}

TraceFunction TraceFunction::constant(FieldPtr field, int rank, const CycScalar& c) {
  TraceFunction f(std::move(field), rank);
  for (auto& v : f.values_) v = c;
  return f;
}

std::vector<int> TraceFunction::point(std::size_t index) const {
  std::vector<int> pt(static_cast<std::size_t>(rank_));
  const auto q = static_cast<std::size_t>(field_->q());
  for (int k = rank_ - 1; k >= 0; --k) {
    pt[static_cast<std::size_t>(k)] = static_cast<int>(index % q);
    index /= q;
  }
  return pt;
}

std::size_t TraceFunction::index(const std::vector<int>& coords) const {
  std::size_t i = 0;
  for (int c : coords) i = i * static_cast<std::size_t>(field_->q()) + static_cast<std::size_t>(c);
  return i;
}

std::size_t TraceFunction::scale(std::size_t idx, int lambda) const {
  auto pt = point(idx);
  for (auto& c : pt) c = field_->mul(lambda, c);
  return index(pt);
}

bool TraceFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const CycScalar& c) { return c.is_zero(); });
}

TraceFunction TraceFunction::scaled(const CycScalar& c) const {
  TraceFunction out = *this;
  for (auto& v : out.values_) v = v * c;
  return out;
}

TraceFunction operator+(const TraceFunction& a, const TraceFunction& b) {
  require_same_shape(a, b);
  TraceFunction out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.values_[i] += b.values_[i];
  return out;
}

TraceFunction operator-(const TraceFunction& a, const TraceFunction& b) {
  require_same_shape(a, b);
  TraceFunction out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.values_[i] -= b.values_[i];
  return out;
}

bool operator==(const TraceFunction& a, const TraceFunction& b) {
  return a.q() == b.q() && a.rank() == b.rank() && a.values_ == b.values_;
}

// ---------------------------------------------------------------------------

Rational TwistShift::scalar(int q) const {
  Rational r = shift % 2 ? -1 : 1;
  Rational qq(q);
  for (int i = 0; i < std::abs(twist); ++i) r = twist > 0 ? Rational(r / qq) : Rational(r * qq);
  return r;
}

TraceFunction apply(const TwistShift& ts, const TraceFunction& f) { return f.scaled(CycScalar(ts.scalar(f.q()))); }

Pairing Pairing::identity(int rank) {
  std::vector<int> m(static_cast<std::size_t>(rank * rank));
  for (int i = 0; i < rank; ++i) m[static_cast<std::size_t>(i * rank + i)] = 1;
  return Pairing(rank, m);
}

Pairing::Pairing(int rank, std::vector<int> matrix) : rank_(rank), m_(std::move(matrix)) {
  if (m_.size() != static_cast<std::size_t>(rank * rank)) fail(ErrorCode::invalid_argument, "pairing matrix must be d x d");
}

Pairing Pairing::transposed() const {
  std::vector<int> t(m_.size());
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) t[static_cast<std::size_t>(j * rank_ + i)] = m_[static_cast<std::size_t>(i * rank_ + j)];
  return Pairing(rank_, t);
}

int Pairing::eval(const FiniteField& field, const std::vector<int>& v, const std::vector<int>& xi) const {
  int acc = 0;
  for (int i = 0; i < rank_; ++i) {
    if (v[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < rank_; ++j) {
      int m = m_[static_cast<std::size_t>(i * rank_ + j)];
      if (m == 0) continue;
      acc = field.add(acc, field.mul(v[static_cast<std::size_t>(i)], field.mul(m, xi[static_cast<std::size_t>(j)])));
    }
  }
  return acc;
}

bool Pairing::nondegenerate(const FiniteField& field) const {
  std::vector<int> a = m_;
  const int n = rank_;
  auto at = [&a, n](int i, int j) -> int& { return a[static_cast<std::size_t>(i * n + j)]; };
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    for (int j = 0; j < n; ++j) std::swap(at(c, j), at(piv, j));
    int inv = field.inv(at(c, c));
    for (int r = c + 1; r < n; ++r) {
      int f = field.mul(at(r, c), inv);
      for (int j = c; j < n; ++j) at(r, j) = field.sub(at(r, j), field.mul(f, at(c, j)));
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

CharacterTable::CharacterTable(FieldPtr field, int psi_index) : field_(std::move(field)), psi_index_(psi_index) {
  if (psi_index <= 0 || psi_index >= field_->q()) fail(ErrorCode::invalid_argument, "additive character index must be a nonzero element");
  const int N = std::lcm(field_->p(), field_->q() - 1);
  ring_ = CyclotomicRing::make(N);
  for (int j = 0; j < N; ++j) zeta_.push_back(CycScalar::root_of_unity(ring_, j));
}

CycScalar CharacterTable::psi(int x) const {
  const int N = ring_->conductor();
  int t = field_->trace(field_->mul(psi_index_, x));
  return zeta_[static_cast<std::size_t>((N / field_->p()) * t % N)];
}

CycScalar CharacterTable::chi(int k, int x) const {
  if (x == 0) return CycScalar(0);
  const int N = ring_->conductor();
  const long qm1 = field_->q() - 1;
  long e = ((static_cast<long>(k) % qm1 + qm1) % qm1) * field_->dlog(x) % qm1;
  return zeta_[static_cast<std::size_t>((N / qm1) * e % N)];
}

int CharacterTable::chi_order(int k) const {
  const int qm1 = field_->q() - 1;
  return qm1 / std::gcd(((k % qm1) + qm1) % qm1, qm1);
}

std::vector<int> CharacterTable::characters_of_order_dividing(int n) const {
  std::vector<int> out;
  const int qm1 = field_->q() - 1;
  for (int k = 0; k < qm1; ++k)
    if (static_cast<long>(k) * n % qm1 == 0) out.push_back(k);
  return out;
}

CycScalar CharacterTable::gauss_sum(int k) const {
  CycScalar g(0);
  for (int x = 1; x < field_->q(); ++x) g += chi(k, x) * psi(x);
  return g;
}

// ---------------------------------------------------------------------------

TraceFunction t_B(const FieldPtr& field) {
  TraceFunction f = TraceFunction::constant(field, 1, CycScalar(1));
  f[1] = CycScalar(1 - field->q());
  return f;
}

TraceFunction t_I0(const FieldPtr& field, int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "n must be positive");
  TraceFunction f(field, 1);
  for (int y = 1; y < field->q(); ++y) {
    auto x = static_cast<std::size_t>(field->pow(y, n));
    f[x] = f[x] + CycScalar(1);
  }
  return f;
}

TraceFunction four_B(const TraceFunction& f, const Pairing& pairing) {
  if (pairing.rank() != f.rank()) fail(ErrorCode::mismatch, "pairing rank differs from function rank");
  const FiniteField& F = *f.field();
  if (!pairing.nondegenerate(F)) fail(ErrorCode::invalid_argument, "degenerate pairing");
  // sum_v f(v) t_B(<v, xi>) with t_B = 1 - q [x = 1]
  CycScalar total(0);
  for (const auto& v : f.values()) total += v;
  const CycScalar sign(f.rank() % 2 ? -1 : 1);
  const CycScalar q(f.q());
  std::vector<std::vector<int>> pts(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) pts[i] = f.point(i);
  TraceFunction g(f.field(), f.rank());
  for (std::size_t xi = 0; xi < f.size(); ++xi) {
    CycScalar on_one(0);
    for (std::size_t v = 0; v < f.size(); ++v) {
      if (!f[v].is_zero() && pairing.eval(F, pts[v], pts[xi]) == 1) on_one += f[v];
    }
    g[xi] = sign * (total - q * on_one);
  }
  return g;
}

TraceFunction four_B(const TraceFunction& f) { return four_B(f, Pairing::identity(f.rank())); }

TraceFunction four_psi(const TraceFunction& f, const CharacterTable& chars, const Pairing& pairing) {
  if (pairing.rank() != f.rank()) fail(ErrorCode::mismatch, "pairing rank differs from function rank");
  const FiniteField& F = *f.field();
  if (!pairing.nondegenerate(F)) fail(ErrorCode::invalid_argument, "degenerate pairing");
  const CycScalar sign(f.rank() % 2 ? -1 : 1);
  std::vector<std::vector<int>> pts(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) pts[i] = f.point(i);
  std::vector<CycScalar> psi(static_cast<std::size_t>(f.q()));
  for (int c = 0; c < f.q(); ++c) psi[static_cast<std::size_t>(c)] = chars.psi(c);
  TraceFunction g(f.field(), f.rank());
  for (std::size_t xi = 0; xi < f.size(); ++xi) {
    // Group the sum by the value of the pairing.
    std::vector<CycScalar> by_value(static_cast<std::size_t>(f.q()), CycScalar(0));
    for (std::size_t v = 0; v < f.size(); ++v) {
      if (!f[v].is_zero()) by_value[static_cast<std::size_t>(pairing.eval(F, pts[v], pts[xi]))] += f[v];
    }
    CycScalar acc(0);
    for (int c = 0; c < f.q(); ++c) {
      if (!by_value[static_cast<std::size_t>(c)].is_zero()) acc += by_value[static_cast<std::size_t>(c)] * psi[static_cast<std::size_t>(c)];
    }
    g[xi] = sign * acc;
  }
  return g;
}

TraceFunction four_psi(const TraceFunction& f, const CharacterTable& chars) {
  return four_psi(f, chars, Pairing::identity(f.rank()));
}

TraceFunction conv_Gm(const TraceFunction& g, const TraceFunction& f) {
  if (g.rank() != 1 || g.q() != f.q()) fail(ErrorCode::mismatch, "conv_Gm expects a rank-1 function on the same field");
  const FiniteField& F = *f.field();
  TraceFunction out(f.field(), f.rank());
  for (int lambda = 1; lambda < f.q(); ++lambda) {
    const CycScalar& c = g[static_cast<std::size_t>(lambda)];
    if (c.is_zero()) continue;
    const int inv = F.inv(lambda);
    for (std::size_t v = 0; v < f.size(); ++v) {
      const CycScalar& val = f[f.scale(v, inv)];
      if (!val.is_zero()) out[v] += c * val;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Row echelon form in place; returns the rank and the determinant factor.
std::size_t eliminate(std::vector<std::vector<CycScalar>>& m, CycScalar& det) {
  det = CycScalar(1);
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) {
      det = CycScalar(0);
      continue;
    }
    if (piv != r) {
      std::swap(m[piv], m[r]);
      det = -det;
    }
    det *= m[r][c];
    const CycScalar inv = m[r][c].inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      const CycScalar f = m[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  if (r < rows) det = CycScalar(0);
  return r;
}

}  // namespace

CycScalar determinant(std::vector<std::vector<CycScalar>> m) {
  if (!m.empty() && m.size() != m[0].size()) fail(ErrorCode::invalid_argument, "determinant of a non-square matrix");
  CycScalar det;
  eliminate(m, det);
  return m.empty() ? CycScalar(1) : det;
}

std::size_t rank(std::vector<std::vector<CycScalar>> m) {
  CycScalar det;
  return eliminate(m, det);
}

std::vector<TraceFunction> test_functions(const FieldPtr& field, int rank, int trials, std::uint64_t seed, bool& exhaustive) {
  const std::size_t size = ipow(field->q(), rank);
  std::vector<TraceFunction> out;
  exhaustive = size <= 625;
  if (exhaustive) {
    for (std::size_t i = 0; i < size; ++i) out.push_back(TraceFunction::delta(field, rank, i));
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int t = 0; t < trials; ++t) {
    std::vector<CycScalar> vals(size);
    for (auto& v : vals) v = CycScalar(dist(rng));
    out.emplace_back(field, rank, std::move(vals));
  }
  return out;
}

CheckOutcome check_keythm(int q, int d, int trials, std::uint64_t seed) {
  const FieldPtr F = field_for(q);
  const Pairing P = Pairing::identity(d);
  const TwistShift bookkeeping{-d, 1};
  const TraceFunction kernel = on_Gm(t_B(F));
  bool exhaustive = false;
  auto fs = test_functions(F, d, trials, seed, exhaustive);
  Json witness{{"identity", "four_B(four_B(f)) = (-1) q^d conv_Gm(t_jB, f)"},
               {"bookkeeping", twist_record(bookkeeping, q)},
               {"exhaustive", exhaustive},
               {"functions_tested", fs.size()}};
  for (std::size_t i = 0; i < fs.size(); ++i) {
    TraceFunction lhs = four_B(four_B(fs[i], P), P.transposed());
    TraceFunction rhs = apply(bookkeeping, conv_Gm(kernel, fs[i]));
    Json diff = first_difference(lhs, rhs);
    if (!diff.is_null()) {
      witness["counterexample"] = {{"function_index", i}, {"difference", diff}};
      return {Verdict::fail, witness};
    }
  }
  return {Verdict::pass, witness};
}

CheckOutcome check_CV(int q, int d) {
  const FieldPtr F = field_for(q);
  const TwistShift bookkeeping{-d - 1, 0};
  const CycScalar factor(bookkeeping.scalar(q));
  TraceFunction probe(F, d);
  // {f : sum_{lambda != 0} f(lambda v) = 0 for all v} forces f(0) = 0 and
  // splits over the punctured lines; each line contributes the nullspace of
  // one all-ones row.
  std::vector<TraceFunction> basis;
  std::vector<bool> seen(probe.size(), false);
  seen[0] = true;
  for (std::size_t v = 1; v < probe.size(); ++v) {
    if (seen[v]) continue;
    std::vector<std::size_t> orbit;
    for (int lambda = 1; lambda < q; ++lambda) {
      std::size_t w = probe.scale(v, lambda);
      seen[w] = true;
      orbit.push_back(w);
    }
    RationalMatrix row(1, orbit.size());
    for (std::size_t k = 0; k < orbit.size(); ++k) row(0, k) = 1;
    for (const auto& vec : nullspace(row)) {
      TraceFunction f(F, d);
      for (std::size_t k = 0; k < orbit.size(); ++k) f[orbit[k]] = CycScalar(vec[k]);
      basis.push_back(f);
    }
  }
  auto in_subspace = [&](const TraceFunction& f) {
    for (std::size_t v = 0; v < f.size(); ++v) {
      CycScalar s(0);
      for (int lambda = 1; lambda < q; ++lambda) s += f[f.scale(v, lambda)];
      if (!s.is_zero()) return false;
    }
    return true;
  };
  Json witness{{"identity", "four_B(four_B(f)) = q^(d+1) f on the subspace"},
               {"bookkeeping", twist_record(bookkeeping, q)},
               {"subspace_dimension", basis.size()}};
  bool ok = true;
  for (std::size_t i = 0; i < basis.size() && ok; ++i) {
    TraceFunction image = four_B(basis[i]);
    if (!in_subspace(basis[i]) || !in_subspace(image)) {
      witness["counterexample"] = {{"basis_index", i}, {"reason", "subspace not preserved"}};
      ok = false;
      break;
    }
    Json diff = first_difference(four_B(image), basis[i].scaled(factor));
    if (!diff.is_null()) {
      witness["counterexample"] = {{"basis_index", i}, {"difference", diff}};
      ok = false;
    }
  }
  // Negative control: a nonzero constant is outside the subspace and the
  // identity fails for it.
  TraceFunction c = TraceFunction::constant(F, d, CycScalar(1));
  bool control_fails = !in_subspace(c) && !(four_B(four_B(c)) == c.scaled(factor));
  witness["negative_control_constant_fails"] = control_fails;
  return CheckOutcome::from_bool(ok && control_fails, witness);
}

CheckOutcome check_P2B(int q, int psi_index) {
  if (!is_prime(q)) fail(ErrorCode::invalid_argument, "p2b requires a prime field");
  const FieldPtr F = field_for(q);
  const CharacterTable chars(F, psi_index);
  const TraceFunction tb = t_B(F);
  const TwistShift bookkeeping{0, -1};
  Json values = Json::object();
  bool ok = true;
  for (int x = 0; x < q; ++x) {
    CycScalar sum(0);
    for (int lambda = 1; lambda < q; ++lambda) {
      int li = F->inv(lambda);
      sum += chars.psi(F->neg(li)) * chars.psi(F->mul(li, x));
    }
    CycScalar expected = tb[static_cast<std::size_t>(x)] * CycScalar(bookkeeping.scalar(q));
    values[F->element_name(x)] = sum.to_string();
    if (!(sum == expected)) ok = false;
  }
  Json witness{{"identity", "sum_{lambda != 0} psi(-1/lambda) psi(x/lambda) = -t_B(x)"},
               {"bookkeeping", twist_record(bookkeeping, q)},
               {"psi_index", psi_index},
               {"values", values}};
  return CheckOutcome::from_bool(ok, witness);
}

CheckOutcome check_BL2(int q, int d, int trials, std::uint64_t seed) {
  if (!is_prime(q)) fail(ErrorCode::invalid_argument, "bl2 requires a prime field");
  const FieldPtr F = field_for(q);
  const CharacterTable chars(F);
  const TwistShift bookkeeping{0, 1};
  TraceFunction kernel(F, 1);
  for (int lambda = 1; lambda < q; ++lambda) kernel[static_cast<std::size_t>(lambda)] = chars.psi(F->neg(F->inv(lambda)));
  bool exhaustive = false;
  auto fs = test_functions(F, d, trials, seed, exhaustive);
  fs.emplace_back(F, d);  // f = 0
  Json witness{{"identity", "four_B(f) = -conv_Gm(lambda -> psi(-1/lambda), four_psi(f))"},
               {"bookkeeping", twist_record(bookkeeping, q)},
               {"exhaustive", exhaustive},
               {"functions_tested", fs.size()}};
  for (std::size_t i = 0; i < fs.size(); ++i) {
    TraceFunction lhs = four_B(fs[i]);
    TraceFunction rhs = apply(bookkeeping, conv_Gm(kernel, four_psi(fs[i], chars)));
    Json diff = first_difference(lhs, rhs);
    if (!diff.is_null()) {
      witness["counterexample"] = {{"function_index", i}, {"difference", diff}};
      return {Verdict::fail, witness};
    }
  }
  return {Verdict::pass, witness};
}

CheckOutcome check_fbneq(int q) {
  const FieldPtr F = field_for(q);
  const TraceFunction at_zero = four_B(TraceFunction::delta(F, 1, 0));
  const TraceFunction at_one = four_B(TraceFunction::delta(F, 1, 1));
  const TwistShift shift{0, 1};
  const bool zero_ok = at_zero == apply(shift, TraceFunction::constant(F, 1, CycScalar(1)));
  const bool one_ok = at_one == apply(shift, t_B(F));
  Json witness{{"four_B(delta_0)", table(at_zero)},
               {"four_B(delta_0) = trace of R[1]", zero_ok},
               {"four_B(delta_1)", table(at_one)},
               {"four_B(delta_1) = trace of B[1]", one_ok},
               {"hom_level_statement", "not function-detectable: traces do not see Hom(R, B) != 0 versus Hom(0_!R, 1_!R) = 0"}};
  return CheckOutcome::from_bool(zero_ok && one_ok, witness);
}

CheckOutcome gauss_suite(int q, int n) {
  const FieldPtr F = field_for(q);
  if (n < 1 || (q - 1) % n != 0) fail(ErrorCode::invalid_argument, "n must divide q - 1");
  const CharacterTable chars(F);
  const TraceFunction count = t_I0(F, n);
  const auto ks = chars.characters_of_order_dividing(n);
  bool ok = true;
  Json point_counts = Json::object();
  for (int x = 1; x < q; ++x) {
    CycScalar s(0);
    for (int k : ks) s += chars.chi(k, x);
    point_counts[F->element_name(x)] = count[static_cast<std::size_t>(x)].to_string();
    if (!(s == count[static_cast<std::size_t>(x)])) ok = false;
  }
  Json gauss = Json::array();
  const int minus_one = F->neg(1);
  for (int k : ks) {
    if (k == 0) continue;
    CycScalar prod = chars.gauss_sum(k) * chars.gauss_sum(q - 1 - k) * chars.chi(k, minus_one);
    bool good = prod == CycScalar(q);
    ok = ok && good;
    gauss.push_back({{"k", k}, {"order", chars.chi_order(k)}, {"g(chi) g(chi^-1) chi(-1)", prod.to_string()}, {"equals_q", good}});
  }
  Json witness{{"t_I0_n", point_counts}, {"point_count_matches_character_sum", ok}, {"gauss_sums", gauss}};
  return CheckOutcome::from_bool(ok, witness);
}

TraceFunction t_I1_candidate(const FieldPtr& field, int n) {
  std::vector<long> u = frobenius_unit(field->q(), n);
  TraceFunction f(field, 1);
  for (int x = 1; x < field->q(); ++x) {
    const long m = field->dlog(x) % n;
    f[static_cast<std::size_t>(x)] = CycScalar(Rational(n * u[static_cast<std::size_t>((n - m) % n)]));
  }
  return f;
}

namespace {

// Scalar c with lhs = c rhs on F_q^x, if any.
Json proportionality(const TraceFunction& lhs, const TraceFunction& rhs) {
  std::optional<CycScalar> c;
  bool proportional = true;
  for (std::size_t x = 1; x < lhs.size(); ++x) {
    if (rhs[x].is_zero()) {
      if (!lhs[x].is_zero()) proportional = false;
      continue;
    }
    CycScalar ratio = lhs[x] / rhs[x];
    if (!c) {
      c = ratio;
    } else if (!(*c == ratio)) {
      proportional = false;
    }
  }
  Json out{{"proportional", proportional}};
  out["scalar"] = (proportional && c) ? Json(c->to_string()) : Json(nullptr);
  return out;
}

}  // namespace

CheckOutcome gauss_g_diagnostic(int q, int n) {
  const FieldPtr F = field_for(q);
  if (n < 1 || (q - 1) % n != 0) fail(ErrorCode::invalid_argument, "n must divide q - 1");
  const CharacterTable chars(F);
  const TraceFunction ti = t_I0(F, n);
  const TwistShift g_twist{1, 1};
  TraceFunction psi(F, 1);
  for (int x = 1; x < q; ++x) psi[static_cast<std::size_t>(x)] = chars.psi(x);
  const TraceFunction G = apply(g_twist, on_Gm(conv_Gm(ti, psi)));
  TraceFunction iota_G(F, 1);
  for (int x = 1; x < q; ++x) iota_G[static_cast<std::size_t>(x)] = G[static_cast<std::size_t>(F->inv(x))];
  const TraceFunction lhs = on_Gm(conv_Gm(iota_G, G));
  const TraceFunction rhs = apply(TwistShift{0, -2}, t_I1_candidate(F, n));
  Json witness{{"G", table(G)},
               {"G_bookkeeping", twist_record(g_twist, q)},
               {"iota_G_conv_G", table(lhs)},
               {"t_I1_candidate", table(rhs)},
               {"comparison", proportionality(lhs, rhs)}};
  return {Verdict::diagnostic, witness};
}

CheckOutcome propB3_diagnostic(int q, int n) {
  const FieldPtr F = field_for(q);
  if (n < 1 || (q - 1) % n != 0) fail(ErrorCode::invalid_argument, "n must divide q - 1");
  const TraceFunction lhs = on_Gm(conv_Gm(t_I0(F, n), on_Gm(t_B(F))));
  const TwistShift bookkeeping{-1, -2};
  const TraceFunction rhs = apply(bookkeeping, t_I1_candidate(F, n));
  Json discrepancy = Json::object();
  for (int x = 1; x < q; ++x) {
    auto i = static_cast<std::size_t>(x);
    discrepancy[F->element_name(x)] = (lhs[i] - rhs[i]).to_string();
  }
  Json witness{{"lhs_I0_conv_jB", table(lhs)},
               {"rhs_I1_twisted", table(rhs)},
               {"rhs_bookkeeping", twist_record(bookkeeping, q)},
               {"frobenius_unit", frobenius_unit(q, n)},
               {"difference", discrepancy},
               {"comparison", proportionality(lhs, rhs)}};
  return {Verdict::diagnostic, witness};
}

CheckOutcome check_lem_mon_shadow(int q, int n, int chi_index) {
  const FieldPtr F = field_for(q);
  if (n < 1 || (q - 1) % n != 0) fail(ErrorCode::invalid_argument, "n must divide q - 1");
  const CharacterTable chars(F);
  TraceFunction f(F, 1);
  for (int x = 1; x < q; ++x) f[static_cast<std::size_t>(x)] = chars.chi(chi_index, x);
  const bool in_eigenspace = static_cast<long>(chi_index) * n % (q - 1) == 0;
  const Rational factor = in_eigenspace ? Rational(q - 1) : Rational(0);
  const TraceFunction lhs = conv_Gm(t_I0(F, n), f);
  Json diff = first_difference(lhs, f.scaled(CycScalar(factor)));
  Json witness{{"chi_order", chars.chi_order(chi_index)},
               {"in_eigenspace", in_eigenspace},
               {"finite_level_factor", factor.get_str()},
               {"pro_limit_factor", TwistShift{-1, -2}.scalar(q).get_str()}};
  if (!in_eigenspace) witness["note"] = "chi^n != 1: out of eigenspace, convolution vanishes";
  if (!diff.is_null()) witness["counterexample"] = diff;
  return CheckOutcome::from_bool(diff.is_null(), witness);
}

CheckOutcome check_mon_equivalence(int q, int d, int n) {
  const FieldPtr F = field_for(q);
  if (n < 1 || (q - 1) % n != 0) fail(ErrorCode::invalid_argument, "n must divide q - 1");
  const CharacterTable chars(F);
  const auto ks = chars.characters_of_order_dividing(n);
  TraceFunction probe(F, d);
  // Lines through 0, each with the representative whose first nonzero
  // coordinate is 1 (the smallest index in the orbit).
  std::vector<std::size_t> reps;
  std::vector<bool> seen(probe.size(), false);
  for (std::size_t v = 1; v < probe.size(); ++v) {
    if (seen[v]) continue;
    reps.push_back(v);
    for (int lambda = 1; lambda < q; ++lambda) seen[probe.scale(v, lambda)] = true;
  }
  // Basis: delta_0 and f_{line, chi}(lambda v) = chi(lambda).
  std::vector<TraceFunction> basis{TraceFunction::delta(F, d, 0)};
  for (std::size_t rep : reps) {
    for (int k : ks) {
      TraceFunction f(F, d);
      for (int lambda = 1; lambda < q; ++lambda) f[probe.scale(rep, lambda)] = chars.chi(k, lambda);
      basis.push_back(f);
    }
  }
  const CycScalar inv_count = CycScalar(Rational(1, q - 1));
  auto coordinates = [&](const TraceFunction& h) {
    std::vector<CycScalar> c{h[0]};
    for (std::size_t rep : reps) {
      for (int k : ks) {
        CycScalar acc(0);
        for (int lambda = 1; lambda < q; ++lambda) acc += h[probe.scale(rep, lambda)] * chars.chi(q - 1 - k, lambda);
        c.push_back(acc * inv_count);
      }
    }
    return c;
  };
  const std::size_t dim = basis.size();
  std::vector<std::vector<CycScalar>> matrix(dim, std::vector<CycScalar>(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    TraceFunction image = four_B(basis[j]);
    auto c = coordinates(image);
    TraceFunction rebuilt(F, d);
    for (std::size_t i = 0; i < dim; ++i) rebuilt = rebuilt + basis[i].scaled(c[i]);
    if (!(rebuilt == image)) fail(ErrorCode::mismatch, "four_B leaves the monodromic span");
    for (std::size_t i = 0; i < dim; ++i) matrix[i][j] = c[i];
  }
  const CycScalar det = determinant(matrix);
  Json witness{{"span_dimension", dim}, {"determinant", det.to_string()}, {"invertible_on_span", !det.is_zero()}};
  if (probe.size() <= 125) {
    std::vector<std::vector<CycScalar>> full(probe.size(), std::vector<CycScalar>(probe.size()));
    for (std::size_t j = 0; j < probe.size(); ++j) {
      TraceFunction image = four_B(TraceFunction::delta(F, d, j));
      for (std::size_t i = 0; i < probe.size(); ++i) full[i][j] = image[i];
    }
    const CycScalar full_det = determinant(full);
    witness["full_space"] = {{"dimension", probe.size()}, {"determinant", full_det.to_string()}, {"invertible", !full_det.is_zero()}};
  }
  witness["hom_level_statement"] = "non-faithfulness of four_B on all complexes is a Hom-space statement and is not function-detectable";
  return CheckOutcome::from_bool(!det.is_zero(), witness);
}

TraceFunction trace_object(int q, const std::string& name) {
  FieldPtr F = field_for(q);
  if (name == "B") return t_B(F);
  if (name == "psi") {
    CharacterTable chars(F);
    std::vector<CycScalar> v;
    for (int x = 0; x < F->q(); ++x) v.push_back(chars.psi(x));
    return TraceFunction(F, 1, std::move(v));
  }
  if (name.rfind("I0:", 0) == 0) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(name.substr(3), &used);
      if (used != name.size() - 3) n = 0;
    } catch (const std::exception&) {
      n = 0;
    }
    if (n < 1) fail(ErrorCode::invalid_argument, "I0:<n> needs a positive integer n");
    return t_I0(F, n);
  }
  fail(ErrorCode::invalid_argument, "unknown trace object '" + name + "' (expected B, I0:<n> or psi)");
}

Json trace_table(const TraceFunction& f) { return table(f); }

}  // namespace mfour
