#pragma once

// Exact arithmetic in finite commutative unital rings: Z/n for n >= 2 and
// finite direct products of such.  Elements are canonical indices in
// [0, size()); for products the index is the mixed-radix packing of the
// component residues.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ostw {

class RingSpec {
public:
  static RingSpec modular(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("RingSpec: modulus must be >= 2");
    RingSpec s;
    s.n_ = n;
    s.size_ = n;
    return s;
  }

  static RingSpec product(std::vector<RingSpec> comps) {
    if (comps.empty()) throw std::invalid_argument("RingSpec: empty product");
    if (comps.size() == 1) return comps.front();
    RingSpec s;
    s.comps_ = std::move(comps);
    s.size_ = 1;
    for (const auto& c : s.comps_) s.size_ *= c.size_;
    return s;
  }

  // Grammar: `Z/<n>` components joined by ` x `.
  static RingSpec parse(const std::string& text) {
    std::vector<RingSpec> comps;
    std::size_t pos = 0;
    while (true) {
      if (text.compare(pos, 2, "Z/") != 0)
        throw std::invalid_argument("ring spec: expected 'Z/' in '" + text + "'");
      pos += 2;
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) throw std::invalid_argument("ring spec: missing modulus in '" + text + "'");
      comps.push_back(modular(std::stoull(text.substr(start, pos - start))));
      if (pos == text.size()) break;
      if (text.compare(pos, 3, " x ") != 0)
        throw std::invalid_argument("ring spec: expected ' x ' in '" + text + "'");
      pos += 3;
    }
    return product(std::move(comps));
  }

  bool is_modular() const { return comps_.empty(); }
  bool is_product() const { return !comps_.empty(); }
  std::uint64_t modulus() const {
    if (!is_modular()) throw std::logic_error("RingSpec: not modular");
    return n_;
  }
  const std::vector<RingSpec>& components() const { return comps_; }
  std::uint64_t size() const { return size_; }

  std::string to_string() const {
    if (is_modular()) return "Z/" + std::to_string(n_);
    std::string out;
    for (std::size_t k = 0; k < comps_.size(); ++k) {
      if (k) out += " x ";
      out += comps_[k].to_string();
    }
    return out;
  }

  bool operator==(const RingSpec& o) const {
    return n_ == o.n_ && comps_ == o.comps_;
  }
  bool operator!=(const RingSpec& o) const { return !(*this == o); }

  std::uint64_t zero() const { return 0; }

  std::uint64_t one() const {
    if (is_modular()) return 1 % n_;
    std::vector<std::uint64_t> c(comps_.size());
    for (std::size_t k = 0; k < comps_.size(); ++k) c[k] = comps_[k].one();
    return pack(c);
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (is_modular()) return (a + b) % n_;
    return zip(a, b, [](const RingSpec& r, std::uint64_t x, std::uint64_t y) { return r.add(x, y); });
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    if (is_modular()) return (a + n_ - b) % n_;
    return zip(a, b, [](const RingSpec& r, std::uint64_t x, std::uint64_t y) { return r.sub(x, y); });
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (is_modular()) return (a * b) % n_;
    return zip(a, b, [](const RingSpec& r, std::uint64_t x, std::uint64_t y) { return r.mul(x, y); });
  }
  std::uint64_t neg(std::uint64_t a) const {
    if (is_modular()) return (n_ - a) % n_;
    return map(a, [](const RingSpec& r, std::uint64_t x) { return r.neg(x); });
  }

  // Reduction of an arbitrary integer; diagonal embedding for products.
  std::uint64_t from_int(std::int64_t v) const {
    if (is_modular()) {
      std::int64_t m = v % static_cast<std::int64_t>(n_);
      if (m < 0) m += static_cast<std::int64_t>(n_);
      return static_cast<std::uint64_t>(m);
    }
    std::vector<std::uint64_t> c(comps_.size());
    for (std::size_t k = 0; k < comps_.size(); ++k) c[k] = comps_[k].from_int(v);
    return pack(c);
  }

  std::uint64_t pack(const std::vector<std::uint64_t>& c) const {
    if (is_modular()) {
      if (c.size() != 1) throw std::invalid_argument("pack: arity mismatch");
      return c[0] % n_;
    }
    if (c.size() != comps_.size()) throw std::invalid_argument("pack: arity mismatch");
    std::uint64_t v = 0;
    for (std::size_t k = comps_.size(); k-- > 0;) v = v * comps_[k].size() + (c[k] % comps_[k].size());
    return v;
  }

  std::vector<std::uint64_t> unpack(std::uint64_t v) const {
    if (is_modular()) return {v % n_};
    std::vector<std::uint64_t> c(comps_.size());
    for (std::size_t k = 0; k < comps_.size(); ++k) {
      c[k] = v % comps_[k].size();
      v /= comps_[k].size();
    }
    return c;
  }

  bool is_unit(std::uint64_t a) const {
    if (is_modular()) return std::gcd(a, n_) == 1;
    auto c = unpack(a);
    for (std::size_t k = 0; k < comps_.size(); ++k)
      if (!comps_[k].is_unit(c[k])) return false;
    return true;
  }

  // Fails (throws) when a is not a unit.
  std::uint64_t inv(std::uint64_t a) const {
    for (std::uint64_t x = 0; x < size_; ++x)
      if (mul(a, x) == one()) return x;
    throw std::domain_error("RingSpec: not a unit: " + std::to_string(a));
  }

  // Exactly the elements with a multiplicative inverse (brute-force search).
  std::vector<std::uint64_t> units() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 0; a < size_; ++a) {
      for (std::uint64_t x = 0; x < size_; ++x) {
        if (mul(a, x) == one()) {
          out.push_back(a);
          break;
        }
      }
    }
    return out;
  }

  // Small generating set of the additive group; 1 suffices for Z/n.
  std::vector<std::uint64_t> additive_generators() const {
    if (is_modular()) return {1 % n_};
    std::vector<std::uint64_t> out;
    for (std::size_t k = 0; k < comps_.size(); ++k) {
      std::vector<std::uint64_t> c(comps_.size(), 0);
      c[k] = 1;
      out.push_back(pack(c));
    }
    return out;
  }

private:
  template <class F>
  std::uint64_t zip(std::uint64_t a, std::uint64_t b, F f) const {
    auto x = unpack(a), y = unpack(b);
    std::vector<std::uint64_t> c(comps_.size());
    for (std::size_t k = 0; k < comps_.size(); ++k) c[k] = f(comps_[k], x[k], y[k]);
    return pack(c);
  }
  template <class F>
  std::uint64_t map(std::uint64_t a, F f) const {
    auto x = unpack(a);
    std::vector<std::uint64_t> c(comps_.size());
    for (std::size_t k = 0; k < comps_.size(); ++k) c[k] = f(comps_[k], x[k]);
    return pack(c);
  }

  std::uint64_t n_ = 0;  // 0 for products
  std::uint64_t size_ = 0;
  std::vector<RingSpec> comps_;
};

// An element bound to its spec; all values stored canonically reduced.
struct RingElem {
  const RingSpec* spec = nullptr;
  std::uint64_t v = 0;

  RingElem() = default;
  RingElem(const RingSpec& s, std::uint64_t canonical) : spec(&s), v(canonical) {}

  static RingElem of(const RingSpec& s, std::int64_t x) { return RingElem(s, s.from_int(x)); }

  friend void require_same(const RingElem& a, const RingElem& b) {
    if (a.spec != b.spec && !(a.spec && b.spec && *a.spec == *b.spec))
      throw std::invalid_argument("RingElem: spec mismatch");
  }
  friend RingElem operator+(const RingElem& a, const RingElem& b) {
    require_same(a, b);
    return RingElem(*a.spec, a.spec->add(a.v, b.v));
  }
  friend RingElem operator-(const RingElem& a, const RingElem& b) {
    require_same(a, b);
    return RingElem(*a.spec, a.spec->sub(a.v, b.v));
  }
  friend RingElem operator*(const RingElem& a, const RingElem& b) {
    require_same(a, b);
    return RingElem(*a.spec, a.spec->mul(a.v, b.v));
  }
  RingElem operator-() const { return RingElem(*spec, spec->neg(v)); }
  friend bool operator==(const RingElem& a, const RingElem& b) {
    require_same(a, b);
    return a.v == b.v;
  }
};

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline bool is_prime_power(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  }
  return true;  // n itself prime
}

// true iff Z/n is local, i.e. n is a prime power.  Product kind is rejected.
inline bool is_local(const RingSpec& s) {
  if (!s.is_modular()) throw std::invalid_argument("is_local: product rings rejected");
  return is_prime_power(s.modulus());
}

// Localization of Z/n at the prime ideal (p): the ring Z/p^v with
// v = v_p(n), together with the canonical surjection a -> a mod p^v.
// Every s outside (p) maps to a unit.
struct Localization {
  RingSpec local;
  std::uint64_t pv = 0;
  std::uint64_t map(std::uint64_t a) const { return a % pv; }
};

inline Localization localize_at_prime(std::uint64_t n, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("localize_at_prime: p must be prime");
  if (n < 2 || n % p != 0)
    throw std::invalid_argument("localize_at_prime: p must divide n (else the localization is the zero ring)");
  std::uint64_t pv = 1;
  while (n % p == 0) {
    n /= p;
    pv *= p;
  }
  return Localization{RingSpec::modular(pv), pv};
}

}  // namespace ostw
