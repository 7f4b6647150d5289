#include "rackd/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "rackd/error.hpp"
#include "rackd/kernels.hpp"

namespace rackd {
namespace {

Permutation::Table identity_table() noexcept {
  Permutation::Table t;
  for (int i = 0; i < kMaxDegree; ++i) t[i] = static_cast<std::uint8_t>(i);
  return t;
}

void check_degree(int degree) {
  if (degree < 0 || degree > kMaxDegree) {
    throw Error("permutation degree out of range [0, 64]: " +
                std::to_string(degree));
  }
}

void require_same_degree(const Permutation& a, const Permutation& b,
                         const char* what) {
  if (a.degree() != b.degree()) {
    throw Error(std::string(what) + ": degree mismatch (" +
                std::to_string(a.degree()) + " vs " +
                std::to_string(b.degree()) + ")");
  }
}

}  // namespace

Permutation::Permutation() noexcept : img_(identity_table()) {}

Permutation::Permutation(int degree) : degree_(degree), img_(identity_table()) {
  check_degree(degree);
}

Permutation Permutation::from_images(std::span<const int> images) {
  const int m = static_cast<int>(images.size());
  check_degree(m);
  Permutation p(m);
  std::array<bool, kMaxDegree> hit{};
  for (int i = 0; i < m; ++i) {
    const int v = images[i];
    if (v < 1 || v > m) {
      throw Error("image " + std::to_string(v) + " outside {1.." +
                  std::to_string(m) + "}");
    }
    if (hit[v - 1]) throw Error("images do not form a bijection");
    hit[v - 1] = true;
    p.img_[i] = static_cast<std::uint8_t>(v - 1);
  }
  return p;
}

Permutation Permutation::from_cycles(
    int degree, const std::vector<std::vector<int>>& cycles) {
  Permutation p(degree);
  std::array<bool, kMaxDegree> used{};
  for (const auto& c : cycles) {
    for (int pt : c) {
      if (pt < 1 || pt > degree) {
        throw Error("cycle point " + std::to_string(pt) + " outside {1.." +
                    std::to_string(degree) + "}");
      }
      if (used[pt - 1]) {
        throw Error("point " + std::to_string(pt) + " repeated in cycles");
      }
      used[pt - 1] = true;
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      p.img_[c[i] - 1] = static_cast<std::uint8_t>(c[(i + 1) % c.size()] - 1);
    }
  }
  return p;
}

Permutation Permutation::parse(std::string_view text, int degree) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') {
      throw Error("expected '(' at position " + std::to_string(i) + " in \"" +
                  std::string(text) + "\"");
    }
    ++i;
    std::vector<int> cyc;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw Error("unterminated cycle in \"" +
                                        std::string(text) + "\"");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw Error("unexpected character '" + std::string(1, text[i]) +
                    "' at position " + std::to_string(i));
      }
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > 1000) throw Error("point out of range in \"" + std::string(text) + "\"");
        ++i;
      }
      cyc.push_back(v);
    }
    if (cyc.size() > 1) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return from_cycles(degree, cycles);
}

Permutation Permutation::cycle(int degree, int first, int len) {
  std::vector<int> c(len);
  std::iota(c.begin(), c.end(), first);
  return from_cycles(degree, {c});
}

Permutation Permutation::from_table_unchecked(int degree,
                                              const Table& table) noexcept {
  Permutation p;
  p.degree_ = degree;
  p.img_ = table;
  return p;
}

int Permutation::operator()(int point) const {
  if (point < 1 || point > degree_) {
    throw Error("point " + std::to_string(point) + " outside {1.." +
                std::to_string(degree_) + "}");
  }
  return img_[point - 1] + 1;
}

Permutation Permutation::inverse() const {
  Permutation r(*this);
  for (int i = 0; i < kMaxDegree; ++i) r.img_[img_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

Permutation Permutation::pow(long long k) const {
  const long long ord = static_cast<long long>(order());
  k %= ord;
  if (k < 0) k += ord;
  Permutation result(degree_);
  Permutation base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

bool Permutation::is_identity() const noexcept {
  for (int i = 0; i < degree_; ++i)
    if (img_[i] != i) return false;
  return true;
}

int Permutation::sign() const noexcept {
  std::array<bool, kMaxDegree> seen{};
  int transpositions = 0;
  for (int i = 0; i < degree_; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return (transpositions % 2 == 0) ? 1 : -1;
}

std::uint64_t Permutation::order() const noexcept {
  std::array<bool, kMaxDegree> seen{};
  std::uint64_t ord = 1;
  for (int i = 0; i < degree_; ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (int j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

int Permutation::support_size() const noexcept {
  int n = 0;
  for (int i = 0; i < degree_; ++i) n += (img_[i] != i);
  return n;
}

int Permutation::first_moved_point() const noexcept {
  for (int i = 0; i < degree_; ++i)
    if (img_[i] != i) return i + 1;
  return 0;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::array<bool, kMaxDegree> seen{};
  for (int i = 0; i < degree_; ++i) {
    if (seen[i] || img_[i] == i) continue;
    std::vector<int> c;
    for (int j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      c.push_back(j + 1);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string Permutation::to_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cs) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << ')';
  }
  return os.str();
}

Permutation Permutation::juxtapose(const Permutation& other) const {
  Permutation r(degree_ + other.degree_);
  for (int i = 0; i < degree_; ++i) r.img_[i] = img_[i];
  for (int i = 0; i < other.degree_; ++i)
    r.img_[degree_ + i] = static_cast<std::uint8_t>(other.img_[i] + degree_);
  return r;
}

Permutation Permutation::extended(int new_degree) const {
  if (new_degree < degree_) throw Error("extended: degree would shrink");
  Permutation r(new_degree);
  r.img_ = img_;
  return r;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  require_same_degree(a, b, "compose");
  Permutation r;
  r.degree_ = a.degree_;
  kernels::compose_kernel()(a.img_.data(), b.img_.data(), r.img_.data());
  return r;
}

std::strong_ordering operator<=>(const Permutation& a,
                                 const Permutation& b) noexcept {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  for (int i = 0; i < a.degree_; ++i) {
    if (auto c = a.img_[i] <=> b.img_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t Permutation::hash() const noexcept {
  // FNV-1a over the live prefix.
  std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(degree_);
  for (int i = 0; i < degree_; ++i) {
    h ^= img_[i];
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

Permutation compose(const Permutation& a, const Permutation& b) { return a * b; }

Permutation conjugate(const Permutation& g, const Permutation& x) {
  return conjugate(g, g.inverse(), x);
}

Permutation conjugate(const Permutation& g, const Permutation& g_inv,
                      const Permutation& x) {
  require_same_degree(g, x, "conjugate");
  Permutation::Table out;
  kernels::conjugate_kernel()(g.table().data(), g_inv.table().data(),
                              x.table().data(), out.data());
  return Permutation::from_table_unchecked(x.degree(), out);
}

bool squares_differ(const Permutation& r, const Permutation& s) {
  const Permutation rs = r * s;
  const Permutation sr = s * r;
  return rs * rs != sr * sr;
}

// ---------------------------------------------------------------- CycleType

CycleType::CycleType(std::map<int, int> counts) {
  for (auto [len, n] : counts) {
    if (len < 1 || n < 0) throw Error("invalid cycle type entry");
    if (n > 0) counts_[len] = n;
  }
}

CycleType CycleType::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') s += c;
  if (s.empty()) throw Error("empty cycle type");
  std::map<int, int> counts;
  std::size_t i = 0;
  while (i < s.size()) {
    auto read_int = [&](const char* what) {
      if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
        throw Error(std::string("malformed cycle type \"") + std::string(text) +
                    "\": expected " + what + " at position " + std::to_string(i));
      }
      int v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + (s[i] - '0');
        if (v > 10000) throw Error("cycle type entry too large");
        ++i;
      }
      return v;
    };
    int len = read_int("cycle length");
    int mult = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      mult = read_int("multiplicity");
    }
    if (len < 1) throw Error("cycle length must be positive");
    counts[len] += mult;
    if (i < s.size()) {
      if (s[i] != ',') {
        throw Error("malformed cycle type \"" + std::string(text) +
                    "\": expected ',' at position " + std::to_string(i));
      }
      ++i;
      if (i == s.size()) throw Error("trailing ',' in cycle type");
    }
  }
  return CycleType(counts);
}

CycleType CycleType::of(const Permutation& x) {
  std::map<int, int> counts;
  std::array<bool, kMaxDegree> seen{};
  const auto& t = x.table();
  for (int i = 0; i < x.degree(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = t[j]) {
      seen[j] = true;
      ++len;
    }
    ++counts[len];
  }
  return CycleType(counts);
}

int CycleType::count(int length) const {
  auto it = counts_.find(length);
  return it == counts_.end() ? 0 : it->second;
}

int CycleType::degree() const noexcept {
  int m = 0;
  for (auto [len, n] : counts_) m += len * n;
  return m;
}

int CycleType::sign() const noexcept {
  int t = 0;
  for (auto [len, n] : counts_) t += (len - 1) * n;
  return t % 2 == 0 ? 1 : -1;
}

bool CycleType::is_identity() const noexcept {
  for (auto [len, n] : counts_)
    if (len > 1) return false;
  return true;
}

std::uint64_t CycleType::order() const noexcept {
  std::uint64_t o = 1;
  for (auto [len, n] : counts_) o = std::lcm(o, static_cast<std::uint64_t>(len));
  return o;
}

std::vector<int> CycleType::lengths() const {
  std::vector<int> out;
  for (auto [len, n] : counts_)
    for (int k = 0; k < n; ++k) out.push_back(len);
  return out;
}

std::string CycleType::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto [len, n] : counts_) {
    if (!first) os << ',';
    first = false;
    os << len;
    if (n > 1) os << '^' << n;
  }
  return os.str();
}

CycleType cycle_type(const Permutation& x) { return CycleType::of(x); }

std::pair<Permutation, Permutation> even_odd_parts(const Permutation& x) {
  std::vector<std::vector<int>> even, odd;
  for (auto& c : x.cycles()) {
    (c.size() % 2 == 0 ? even : odd).push_back(c);
  }
  return {Permutation::from_cycles(x.degree(), even),
          Permutation::from_cycles(x.degree(), odd)};
}

Permutation lambda_k(int m, long long k) {
  if (m < 3 || m % 2 == 0) throw Error("lambda_k: m must be odd and >= 3");
  long long kk = ((k % m) + m) % m;
  if (std::gcd(kk, static_cast<long long>(m)) != 1) {
    throw Error("lambda_k: gcd(k, m) != 1");
  }
  std::vector<int> images(m);
  for (int r = 0; r < m; ++r) {
    const int point = (r == 0) ? m : r;
    const int image_residue = static_cast<int>((kk * r) % m);
    images[point - 1] = (image_residue == 0) ? m : image_residue;
  }
  return Permutation::from_images(images);
}

int jacobi(long long k, long long m) {
  if (m < 1 || m % 2 == 0) throw Error("jacobi: m must be odd and positive");
  long long a = ((k % m) + m) % m;
  long long n = m;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const long long r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace rackd
