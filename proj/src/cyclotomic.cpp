#include "rackd/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "rackd/error.hpp"

namespace rackd {

namespace {

using Poly = std::vector<long long>;

// Exact division of a by the monic b.
Poly divide_exact(Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const long long c = a[i];
    q[i - db] = c;
    for (std::size_t k = 0; k <= db; ++k) a[i - db + k] -= c * b[k];
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (a[i] != 0) throw Error("internal: inexact cyclotomic division");
  }
  return q;
}

}  // namespace

int euler_phi(int n) {
  int r = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

const std::vector<long long>& cyclotomic_polynomial(int n) {
  if (n < 1) throw Error("cyclotomic order must be positive");
  static std::mutex mu;
  static std::map<int, Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // X^n - 1 divided by Φ_d for the proper divisors d of n.
  Poly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_exact(p, cyclotomic_polynomial(d));
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic(int n, long long value) : n_(n) {
  if (n < 1) throw Error("cyclotomic order must be positive");
  c_.assign(euler_phi(n), 0);
  c_[0] = value;
}

Cyclotomic::Cyclotomic(int n, std::vector<long long> raw, bool reduce) : n_(n) {
  const Poly& phi = cyclotomic_polynomial(n);
  const std::size_t d = phi.size() - 1;
  if (reduce) {
    for (std::size_t i = raw.size(); i-- > d;) {
      const long long c = raw[i];
      if (c == 0) continue;
      for (std::size_t k = 0; k <= d; ++k) raw[i - d + k] -= c * phi[k];
    }
  }
  raw.resize(d, 0);
  c_ = std::move(raw);
}

Cyclotomic Cyclotomic::from_coefficients(int n, std::vector<long long> c) {
  if (n < 1) throw Error("cyclotomic order must be positive");
  return Cyclotomic(n, std::move(c), true);
}

Cyclotomic Cyclotomic::root(int n, long long k) {
  if (n < 1) throw Error("cyclotomic order must be positive");
  const long long e = ((k % n) + n) % n;
  Poly raw(e + 1, 0);
  raw[e] = 1;
  return Cyclotomic(n, std::move(raw), true);
}

bool Cyclotomic::is_zero() const noexcept {
  for (long long c : c_)
    if (c != 0) return false;
  return true;
}

std::optional<int> Cyclotomic::root_exponent() const {
  for (int k = 0; k < n_; ++k)
    if (*this == root(n_, k)) return k;
  return std::nullopt;
}

Cyclotomic Cyclotomic::lift(int m) const {
  if (m % n_ != 0) throw Error("cannot lift Z[ζ_" + std::to_string(n_) + "] to Z[ζ_" +
                               std::to_string(m) + "]");
  const int step = m / n_;
  Poly raw(static_cast<std::size_t>(c_.size() - 1) * step + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) raw[i * step] = c_[i];
  return Cyclotomic(m, std::move(raw), true);
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  if (n_ != o.n_) throw Error("cyclotomic orders differ");
  Cyclotomic r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (n_ != o.n_) throw Error("cyclotomic orders differ");
  Poly raw(c_.size() * 2, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) raw[i + j] += c_[i] * o.c_[j];
  }
  return Cyclotomic(n_, std::move(raw), true);
}

Cyclotomic Cyclotomic::pow(long long e) const {
  if (e < 0) {
    auto k = root_exponent();
    if (!k) throw Error("negative power of a non-root");
    return root(n_, -static_cast<long long>(*k) * (-e));
  }
  Cyclotomic r = one(n_), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

std::string Cyclotomic::to_string() const {
  if (auto k = root_exponent()) {
    if (*k == 0) return "1";
    if (2 * *k == n_) return "-1";
    return "ζ" + std::to_string(n_) + "^" + std::to_string(*k);
  }
  if (auto k = (-*this).root_exponent()) {
    return "-ζ" + std::to_string(n_) + "^" + std::to_string(*k);
  }
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0) os << "-";
    const long long a = c_[i] < 0 ? -c_[i] : c_[i];
    if (i == 0 || a != 1) os << a;
    if (i > 0) os << "ζ" << n_ << (i > 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  return first ? "0" : os.str();
}

CycloMatrix::CycloMatrix(int n, int dim, std::vector<Cyclotomic> entries)
    : n_(n), dim_(dim), a_(std::move(entries)) {
  if (dim < 1 || a_.size() != static_cast<std::size_t>(dim) * dim) {
    throw Error("matrix entry count does not match its dimension");
  }
  for (const auto& e : a_)
    if (e.order() != n) throw Error("matrix entries must share one cyclotomic order");
}

CycloMatrix CycloMatrix::identity(int n, int dim) {
  return scalar(Cyclotomic::one(n), dim);
}

CycloMatrix CycloMatrix::scalar(const Cyclotomic& c, int dim) {
  std::vector<Cyclotomic> e(static_cast<std::size_t>(dim) * dim, Cyclotomic::zero(c.order()));
  for (int i = 0; i < dim; ++i) e[i * dim + i] = c;
  return CycloMatrix(c.order(), dim, std::move(e));
}

CycloMatrix CycloMatrix::operator*(const CycloMatrix& o) const {
  if (dim_ != o.dim_ || n_ != o.n_) throw Error("matrix shapes differ");
  std::vector<Cyclotomic> e(a_.size(), Cyclotomic::zero(n_));
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < dim_; ++j) e[i * dim_ + j] = e[i * dim_ + j] + at(i, k) * o.at(k, j);
    }
  return CycloMatrix(n_, dim_, std::move(e));
}

Cyclotomic CycloMatrix::det() const {
  if (dim_ == 1) return a_[0];
  // Laplace expansion along the first row.
  Cyclotomic d = Cyclotomic::zero(n_);
  for (int j = 0; j < dim_; ++j) {
    std::vector<Cyclotomic> minor;
    for (int i = 1; i < dim_; ++i)
      for (int k = 0; k < dim_; ++k)
        if (k != j) minor.push_back(at(i, k));
    const Cyclotomic term = at(0, j) * CycloMatrix(n_, dim_ - 1, std::move(minor)).det();
    d = j % 2 == 0 ? d + term : d - term;
  }
  return d;
}

std::string CycloMatrix::to_string() const {
  if (dim_ == 1) return a_[0].to_string();
  std::string s = "[";
  for (int i = 0; i < dim_; ++i) {
    s += i ? "; " : "";
    for (int j = 0; j < dim_; ++j) s += (j ? ", " : "") + at(i, j).to_string();
  }
  return s + "]";
}

}  // namespace rackd
