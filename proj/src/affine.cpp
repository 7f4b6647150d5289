#include "rackd/affine.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "rackd/error.hpp"

namespace rackd {

namespace {

int mod(long long x, int p) {
  x %= p;
  return static_cast<int>(x < 0 ? x + p : x);
}

int inv_mod(int a, int p) {
  // p prime: a^(p-2).
  long long r = 1, b = a, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

// Row reduction; returns rank and leaves the echelon form in m.
int reduce(std::vector<int>& m, int rows, int cols, int p, std::vector<int>* aug = nullptr,
           int aug_cols = 0) {
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r * cols + c] != 0) { piv = r; break; }
    if (piv < 0) continue;
    if (piv != rank) {
      for (int k = 0; k < cols; ++k) std::swap(m[piv * cols + k], m[rank * cols + k]);
      if (aug)
        for (int k = 0; k < aug_cols; ++k)
          std::swap((*aug)[piv * aug_cols + k], (*aug)[rank * aug_cols + k]);
    }
    const int inv = inv_mod(m[rank * cols + c], p);
    for (int k = 0; k < cols; ++k) m[rank * cols + k] = m[rank * cols + k] * inv % p;
    if (aug)
      for (int k = 0; k < aug_cols; ++k)
        (*aug)[rank * aug_cols + k] = (*aug)[rank * aug_cols + k] * inv % p;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r * cols + c] == 0) continue;
      const int f = m[r * cols + c];
      for (int k = 0; k < cols; ++k)
        m[r * cols + k] = mod(m[r * cols + k] - 1LL * f * m[rank * cols + k], p);
      if (aug)
        for (int k = 0; k < aug_cols; ++k)
          (*aug)[r * aug_cols + k] =
              mod((*aug)[r * aug_cols + k] - 1LL * f * (*aug)[rank * aug_cols + k], p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

// ------------------------------------------------------------------ FpMatrix

FpMatrix::FpMatrix(int p, int t, std::vector<int> entries)
    : p_(p), t_(t), a_(std::move(entries)) {
  if (!is_prime(p)) throw Error("matrix modulus " + std::to_string(p) + " is not prime");
  if (t < 1 || a_.size() != static_cast<std::size_t>(t) * t) {
    throw Error("matrix must have t*t entries");
  }
  for (int& x : a_) x = mod(x, p);
}

FpMatrix FpMatrix::identity(int p, int t) { return scalar(p, t, 1); }

FpMatrix FpMatrix::scalar(int p, int t, int c) {
  std::vector<int> a(static_cast<std::size_t>(t) * t, 0);
  for (int i = 0; i < t; ++i) a[i * t + i] = c;
  return FpMatrix(p, t, std::move(a));
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
  std::vector<int> c(a_.size(), 0);
  for (int i = 0; i < t_; ++i)
    for (int k = 0; k < t_; ++k) {
      const int x = a_[i * t_ + k];
      if (x == 0) continue;
      for (int j = 0; j < t_; ++j) c[i * t_ + j] = (c[i * t_ + j] + x * o.a_[k * t_ + j]) % p_;
    }
  return FpMatrix(p_, t_, std::move(c));
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
  std::vector<int> c(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) c[i] = (a_[i] + o.a_[i]) % p_;
  return FpMatrix(p_, t_, std::move(c));
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
  std::vector<int> c(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) c[i] = mod(a_[i] - o.a_[i], p_);
  return FpMatrix(p_, t_, std::move(c));
}

FpMatrix FpMatrix::pow(long long e) const {
  FpMatrix base = *this;
  if (e < 0) {
    auto inv = inverse();
    if (!inv) throw Error("negative power of a singular matrix");
    base = *inv;
    e = -e;
  }
  FpMatrix r = identity(p_, t_);
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

std::optional<FpMatrix> FpMatrix::inverse() const {
  std::vector<int> m = a_;
  std::vector<int> aug = identity(p_, t_).a_;
  if (reduce(m, t_, t_, p_, &aug, t_) < t_) return std::nullopt;
  return FpMatrix(p_, t_, std::move(aug));
}

bool FpMatrix::is_zero() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](int x) { return x == 0; });
}

int FpMatrix::rank() const {
  std::vector<int> m = a_;
  return reduce(m, t_, t_, p_);
}

bool FpMatrix::is_invertible() const { return rank() == t_; }

int FpMatrix::order() const {
  if (!is_invertible()) throw Error("order of a singular matrix");
  const FpMatrix id = identity(p_, t_);
  FpMatrix x = *this;
  for (int k = 1;; ++k) {
    if (x == id) return k;
    x = x * *this;
  }
}

std::vector<int> FpMatrix::apply(const std::vector<int>& v) const {
  std::vector<int> out(t_, 0);
  for (int i = 0; i < t_; ++i) {
    long long s = 0;
    for (int j = 0; j < t_; ++j) s += 1LL * a_[i * t_ + j] * v[j];
    out[i] = mod(s, p_);
  }
  return out;
}

// -------------------------------------------------------------- polynomials

namespace {

// Remainder of a mod b (b monic), both constant term first.
std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& b, int p) {
  const int db = static_cast<int>(b.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    const int c = a[i];
    if (c == 0) continue;
    for (int k = 0; k <= db; ++k) a[i - db + k] = mod(a[i - db + k] - 1LL * c * b[k], p);
  }
  a.resize(std::max(db, 0));
  return a;
}

std::vector<std::vector<int>> monic_polys(int p, int deg) {
  std::vector<std::vector<int>> out;
  long long total = 1;
  for (int i = 0; i < deg; ++i) total *= p;
  for (long long code = 0; code < total; ++code) {
    std::vector<int> c(deg + 1, 0);
    long long x = code;
    for (int i = 0; i < deg; ++i) {
      c[i] = static_cast<int>(x % p);
      x /= p;
    }
    c[deg] = 1;
    out.push_back(std::move(c));
  }
  return out;
}

void check_poly(int p, const std::vector<int>& poly) {
  if (!is_prime(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
  if (poly.size() < 2) throw Error("polynomial must have degree >= 1");
  if (mod(poly.back(), p) != 1) throw Error("polynomial must be monic");
}

}  // namespace

bool is_irreducible(int p, const std::vector<int>& poly) {
  check_poly(p, poly);
  std::vector<int> f(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) f[i] = mod(poly[i], p);
  const int deg = static_cast<int>(f.size()) - 1;
  for (int k = 1; 2 * k <= deg; ++k) {
    for (const auto& g : monic_polys(p, k)) {
      auto r = poly_rem(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](int x) { return x == 0; })) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> irreducible_polynomials(int p, int t) {
  std::vector<std::vector<int>> out;
  for (auto& f : monic_polys(p, t)) {
    if (t == 1 && (f[0] == 0 || f[0] == p - 1)) continue;  // X, X - 1
    if (is_irreducible(p, f)) out.push_back(std::move(f));
  }
  return out;
}

FpMatrix companion_matrix(int p, const std::vector<int>& poly) {
  check_poly(p, poly);
  const int t = static_cast<int>(poly.size()) - 1;
  std::vector<int> a(static_cast<std::size_t>(t) * t, 0);
  for (int i = 1; i < t; ++i) a[i * t + (i - 1)] = 1;
  for (int i = 0; i < t; ++i) a[i * t + (t - 1)] = mod(-poly[i], p);
  return FpMatrix(p, t, std::move(a));
}

std::string poly_to_string(const std::vector<int>& poly) {
  std::string s;
  for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i) {
    const int c = poly[i];
    if (c == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0 || c != 1) s += std::to_string(c);
    if (i >= 1) s += "X";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

// ------------------------------------------------------------ affine racks

int AffineRack::size() const {
  int n = 1;
  for (int i = 0; i < t; ++i) n *= p;
  return n;
}

std::vector<int> AffineRack::vec(int index) const {
  std::vector<int> v(t);
  for (int i = 0; i < t; ++i) {
    v[i] = index % p;
    index /= p;
  }
  return v;
}

int AffineRack::index(const std::vector<int>& v) const {
  int x = 0;
  for (int i = t - 1; i >= 0; --i) x = x * p + mod(v[i], p);
  return x;
}

namespace {

// (1 - M)x + My as an index.
int affine_op(const AffineRack& a, const FpMatrix& M, int x, int y) {
  auto vx = a.vec(x), vy = a.vec(y);
  auto mx = M.apply(vx), my = M.apply(vy);
  std::vector<int> z(a.t);
  for (int i = 0; i < a.t; ++i) z[i] = vx[i] - mx[i] + my[i];
  return a.index(z);
}

FiniteRack affine_table(const AffineRack& a, const FpMatrix& M) {
  const int n = a.size();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = affine_op(a, M, x, y);
  return FiniteRack::from_table(t);
}

int norm_j(const AffineRack& a, int j) { return mod(j, a.d); }

}  // namespace

int AffineRack::op(int x, int y) const { return affine_op(*this, T, x, y); }

FiniteRack AffineRack::rack() const { return affine_table(*this, T); }

AffineRack make_affine(int p, int t, const FpMatrix& T) {
  if (T.p() != p || T.dim() != t) throw Error("matrix shape does not match (p, t)");
  if (!T.is_invertible()) throw Error("affine rack needs an invertible T");
  AffineRack a;
  a.p = p;
  a.t = t;
  a.T = T;
  a.d = T.order();
  return a;
}

AffineRack companion_affine(int p, const std::vector<int>& poly) {
  check_poly(p, poly);
  if (poly.size() == 2 && (mod(poly[0], p) == 0 || mod(poly[0], p) == p - 1)) {
    throw Error("polynomial " + poly_to_string(poly) + " is excluded (X or X - 1)");
  }
  if (!is_irreducible(p, poly)) {
    throw Error("polynomial " + poly_to_string(poly) + " is reducible over F_" +
                std::to_string(p));
  }
  const int t = static_cast<int>(poly.size()) - 1;
  return make_affine(p, t, companion_matrix(p, poly));
}

FiniteRack double_rack(const AffineRack& a, int j) {
  j = norm_j(a, j);
  const int n = a.size();
  const FpMatrix id = FpMatrix::identity(a.p, a.t);
  const FpMatrix layer[2] = {a.T, a.T.pow(j)};
  std::vector<std::vector<int>> t(2 * n, std::vector<int>(2 * n));
  std::vector<std::string> labels;
  for (int x = 0; x < 2 * n; ++x) {
    const int hx = x / n;
    const auto v = a.vec(x % n);
    std::string lv = "(";
    for (int i = 0; i < a.t; ++i) lv += (i ? "," : "") + std::to_string(v[i]);
    labels.push_back(lv + (hx == 0 ? "; T)" : "; T^" + std::to_string(j) + ")"));
    for (int y = 0; y < 2 * n; ++y) {
      const int hy = y / n;
      // (v, T^h) ▷ (w, T^k) = (T^h w + (id - T^k) v, T^k)
      const auto tw = layer[hx].apply(a.vec(y % n));
      const auto sv = (id - layer[hy]).apply(v);
      std::vector<int> z(a.t);
      for (int i = 0; i < a.t; ++i) z[i] = tw[i] + sv[i];
      t[x][y] = hy * n + a.index(z);
    }
  }
  return FiniteRack::from_table(t, std::move(labels));
}

FiniteRack layer_rack(const AffineRack& a, int j) {
  return affine_table(a, a.T.pow(norm_j(a, j)));
}

FpMatrix j_sum(const FpMatrix& T, int j) {
  if (j < 0) throw Error("j_sum needs j >= 0");
  FpMatrix s = FpMatrix::scalar(T.p(), T.dim(), 0);
  FpMatrix pw = FpMatrix::identity(T.p(), T.dim());
  for (int i = 0; i < j; ++i) {
    s = s + pw;
    pw = pw * T;
  }
  return s;
}

FpMatrix condition_matrix(const AffineRack& a, int j) {
  const FpMatrix id = FpMatrix::identity(a.p, a.t);
  return (id + a.T.pow(norm_j(a, j) + 1)) * (id - a.T);
}

std::optional<bool> check_power_isomorphism(const AffineRack& a, int j) {
  j = norm_j(a, j);
  if (j == 0) return std::nullopt;  // (0)_T = 0
  const FpMatrix js = j_sum(a.T, j);
  if (!js.is_invertible()) return std::nullopt;
  const int n = a.size();
  std::vector<int> f(n);
  for (int v = 0; v < n; ++v) f[v] = a.index(js.apply(a.vec(v)));
  const FiniteRack q1 = a.rack();
  if (!is_morphism(power_rack(q1, j), layer_rack(a, j), f)) return false;
  std::vector<int> g(2 * n);
  for (int v = 0; v < n; ++v) {
    g[v] = v;
    g[n + v] = n + f[v];
  }
  const bool bij = std::set<int>(g.begin(), g.end()).size() == g.size();
  return bij && is_morphism(amalgam(q1, j), double_rack(a, j), g);
}

std::optional<AffineWitness> type_d_condition(const AffineRack& a, int j) {
  j = norm_j(a, j);
  const FpMatrix M = condition_matrix(a, j);
  if (M.is_zero()) return std::nullopt;
  const int n = a.size();
  for (int v = 0; v < n; ++v) {
    const auto mv = M.apply(a.vec(v));
    if (std::all_of(mv.begin(), mv.end(), [](int x) { return x == 0; })) continue;
    const FiniteRack q = double_rack(a, j);
    AffineWitness w{0, n + v};
    if (q.op(w.r, q.op(w.s, q.op(w.r, w.s))) == w.s) {
      throw Error("internal: affine witness failed the rack check");
    }
    return w;
  }
  return std::nullopt;
}

std::optional<AffineWitness> brute_force_double_witness(const AffineRack& a, int j) {
  const FiniteRack q = double_rack(a, j);
  const int n = a.size();
  for (int r = 0; r < n; ++r)
    for (int s = n; s < 2 * n; ++s)
      if (q.op(r, q.op(s, q.op(r, s))) != s) return AffineWitness{r, s};
  return std::nullopt;
}

std::optional<int> exceptional_j(const AffineRack& a) {
  if (a.p == 2) return mod(a.d - 1, a.d);
  if (a.d % 2 == 0) return a.d / 2 - 1;
  return std::nullopt;
}

std::vector<int> fixed_points(const AffineRack& a) {
  std::vector<int> out;
  for (int v = 0; v < a.size(); ++v)
    if (a.T.apply(a.vec(v)) == a.vec(v)) out.push_back(v);
  return out;
}

QuasiRealEvidence quasi_real_affine_criterion(const AffineRack& a,
                                              const std::vector<Permutation>& psi,
                                              int j, const ConjClassSpec& cls) {
  QuasiRealEvidence ev;
  const int n = a.size();
  if (static_cast<int>(psi.size()) != n) {
    ev.failed.push_back("psi must have one image per vector");
    return ev;
  }
  std::unordered_set<Permutation, PermutationHash> image(psi.begin(), psi.end());
  if (static_cast<int>(image.size()) != n) ev.failed.push_back("psi is not injective");
  for (const auto& x : psi) {
    if (!cls.contains(x)) {
      ev.failed.push_back("psi image " + x.to_string() + " lies outside " + cls.to_string());
      break;
    }
  }
  bool morph = true;
  for (int x = 0; x < n && morph; ++x)
    for (int y = 0; y < n && morph; ++y)
      morph = conjugate(psi[x], psi[y]) == psi[a.op(x, y)];
  if (!morph) ev.failed.push_back("psi is not a rack morphism");

  const FpMatrix id = FpMatrix::identity(a.p, a.t);
  const int jj = mod(j, a.d);
  if (!(id - a.T.pow(jj)).is_invertible()) ev.failed.push_back("id - T^j is not invertible");
  if ((id + a.T.pow(jj + 1)).is_zero()) ev.failed.push_back("id + T^{j+1} = 0");

  for (const auto& x : psi) {
    const Permutation xj = x.pow(j);
    if (xj == x || !cls.contains(xj)) {
      ev.failed.push_back("class is not quasi-real of type " + std::to_string(j) + " at " +
                          x.to_string());
      break;
    }
  }
  if (!ev.failed.empty()) return ev;

  ev.R = psi;
  for (const auto& x : psi) {
    Permutation xj = x.pow(j);
    if (image.count(xj)) {
      ev.failed.push_back("psi(A) meets psi(A)^j at " + xj.to_string());
      return ev;
    }
    ev.S.push_back(std::move(xj));
  }
  ev.r = psi[0];
  for (const auto& s : ev.S) {
    if (squares_differ(ev.r, s)) {
      ev.s = s;
      ev.applies = true;
      return ev;
    }
  }
  ev.failed.push_back("no s in psi(A)^j with (rs)^2 != (sr)^2");
  return ev;
}

}  // namespace rackd
