#include "bounds_oracle.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace oracle {

namespace {
constexpr std::uint64_t kBase = 1000000000ull;
}

void Fixed::trim() {
  while (limbs_.size() > static_cast<std::size_t>(kFracLimbs) + 1 && limbs_.back() == 0)
    limbs_.pop_back();
  while (limbs_.size() < static_cast<std::size_t>(kFracLimbs) + 1) limbs_.push_back(0);
  if (is_zero()) negative_ = false;
}

bool Fixed::is_zero() const {
  for (std::uint32_t l : limbs_)
    if (l != 0) return false;
  return true;
}

Fixed Fixed::abs() const {
  Fixed r = *this;
  r.negative_ = false;
  return r;
}

Fixed Fixed::from_int(long long v) {
  Fixed r;
  r.negative_ = v < 0;
  unsigned long long mag = r.negative_ ? -static_cast<unsigned long long>(v)
                                       : static_cast<unsigned long long>(v);
  r.limbs_.assign(kFracLimbs, 0);
  while (mag > 0) {
    r.limbs_.push_back(static_cast<std::uint32_t>(mag % kBase));
    mag /= kBase;
  }
  r.trim();
  return r;
}

Fixed Fixed::from_double(double v) {
  if (v == 0.0) return Fixed::from_int(0);
  if (!std::isfinite(v)) throw std::invalid_argument("oracle: non-finite input");
  bool neg = v < 0.0;
  int exp = 0;
  double frac = std::frexp(neg ? -v : v, &exp);  // frac in [0.5, 1)
  auto mant = static_cast<long long>(frac * 9007199254740992.0);  // frac * 2^53, exact
  int k = exp - 53;
  Fixed r = from_int(mant);
  while (k > 0) {
    r = r.mul_small(2);
    --k;
  }
  while (k < 0) {
    r = r.div_small(2);
    ++k;
  }
  r.negative_ = neg;
  r.trim();
  return r;
}

int Fixed::compare_mag(const Fixed& a, const Fixed& b) {
  std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
  for (std::size_t i = n; i-- > 0;) {
    std::uint32_t la = i < a.limbs_.size() ? a.limbs_[i] : 0;
    std::uint32_t lb = i < b.limbs_.size() ? b.limbs_[i] : 0;
    if (la != lb) return la < lb ? -1 : 1;
  }
  return 0;
}

int Fixed::compare(const Fixed& o) const {
  if (negative_ != o.negative_) {
    if (is_zero() && o.is_zero()) return 0;
    return negative_ ? -1 : 1;
  }
  int c = compare_mag(*this, o);
  return negative_ ? -c : c;
}

Fixed Fixed::add_mag(const Fixed& a, const Fixed& b) {
  Fixed r;
  std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
  r.limbs_.assign(n + 1, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = carry;
    if (i < a.limbs_.size()) s += a.limbs_[i];
    if (i < b.limbs_.size()) s += b.limbs_[i];
    r.limbs_[i] = static_cast<std::uint32_t>(s % kBase);
    carry = s / kBase;
  }
  r.limbs_[n] = static_cast<std::uint32_t>(carry);
  r.trim();
  return r;
}

Fixed Fixed::sub_mag(const Fixed& a, const Fixed& b) {
  Fixed r;
  r.limbs_.assign(a.limbs_.size(), 0);
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::int64_t s = static_cast<std::int64_t>(a.limbs_[i]) - borrow -
                     (i < b.limbs_.size() ? b.limbs_[i] : 0);
    if (s < 0) {
      s += kBase;
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.limbs_[i] = static_cast<std::uint32_t>(s);
  }
  r.trim();
  return r;
}

Fixed Fixed::operator+(const Fixed& o) const {
  if (negative_ == o.negative_) {
    Fixed r = add_mag(*this, o);
    r.negative_ = negative_;
    r.trim();
    return r;
  }
  int c = compare_mag(*this, o);
  if (c == 0) return from_int(0);
  Fixed r = c > 0 ? sub_mag(*this, o) : sub_mag(o, *this);
  r.negative_ = c > 0 ? negative_ : o.negative_;
  r.trim();
  return r;
}

Fixed Fixed::operator-(const Fixed& o) const {
  Fixed n = o;
  n.negative_ = !o.negative_;
  return *this + n;
}

Fixed Fixed::operator*(const Fixed& o) const {
  std::vector<std::uint64_t> acc(limbs_.size() + o.limbs_.size() + 1, 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    if (limbs_[i] == 0) continue;
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
      unsigned __int128 cur = static_cast<unsigned __int128>(limbs_[i]) * o.limbs_[j] +
                              acc[i + j] + carry;
      acc[i + j] = static_cast<std::uint64_t>(cur % kBase);
      carry = static_cast<std::uint64_t>(cur / kBase);
    }
    std::size_t pos = i + o.limbs_.size();
    while (carry > 0) {
      std::uint64_t cur = acc[pos] + carry % kBase;
      acc[pos] = cur % kBase;
      carry = carry / kBase + cur / kBase;
      ++pos;
    }
  }
  // Drop kFracLimbs low limbs: the product of two scaled values carries a
  // double scale.
  Fixed r;
  r.limbs_.assign(acc.size() > static_cast<std::size_t>(kFracLimbs)
                      ? acc.size() - kFracLimbs
                      : 1,
                  0);
  for (std::size_t i = kFracLimbs; i < acc.size(); ++i)
    r.limbs_[i - kFracLimbs] = static_cast<std::uint32_t>(acc[i]);
  r.negative_ = negative_ != o.negative_;
  r.trim();
  return r;
}

Fixed Fixed::mul_small(std::uint32_t f) const {
  Fixed r;
  r.limbs_.assign(limbs_.size() + 2, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) * f + carry;
    r.limbs_[i] = static_cast<std::uint32_t>(cur % kBase);
    carry = cur / kBase;
  }
  std::size_t pos = limbs_.size();
  while (carry > 0) {
    r.limbs_[pos++] = static_cast<std::uint32_t>(carry % kBase);
    carry /= kBase;
  }
  r.negative_ = negative_;
  r.trim();
  return r;
}

Fixed Fixed::div_small(std::uint32_t d) const {
  if (d == 0) throw std::invalid_argument("oracle: division by zero");
  Fixed r;
  r.limbs_.assign(limbs_.size(), 0);
  std::uint64_t rem = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    std::uint64_t cur = rem * kBase + limbs_[i];
    r.limbs_[i] = static_cast<std::uint32_t>(cur / d);
    rem = cur % d;
  }
  r.negative_ = negative_;
  r.trim();
  return r;
}

double Fixed::to_double() const {
  double v = 0.0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    v = v * 1e9 + static_cast<double>(limbs_[i]);
  }
  v *= std::pow(10.0, -9.0 * kFracLimbs);
  return negative_ ? -v : v;
}

std::string Fixed::to_string(int digits) const {
  std::string out = negative_ ? "-" : "";
  char buf[16];
  bool started = false;
  for (std::size_t i = limbs_.size(); i-- > static_cast<std::size_t>(kFracLimbs);) {
    if (!started && limbs_[i] == 0 && i > static_cast<std::size_t>(kFracLimbs)) continue;
    std::snprintf(buf, sizeof buf, started ? "%09u" : "%u", limbs_[i]);
    out += buf;
    started = true;
  }
  if (!started) out += "0";
  out += ".";
  int emitted = 0;
  for (std::size_t i = kFracLimbs; i-- > 0 && emitted < digits;) {
    std::snprintf(buf, sizeof buf, "%09u", limbs_[i]);
    out += buf;
    emitted += 9;
  }
  return out;
}

Fixed Fixed::reciprocal(const Fixed& a) {
  if (a.is_zero()) throw std::invalid_argument("oracle: reciprocal of zero");
  Fixed two = from_int(2);
  Fixed x = from_double(1.0 / a.to_double());
  for (int i = 0; i < 9; ++i) x = x * (two - a * x);
  return x;
}

Fixed Fixed::sqrt(const Fixed& a) {
  if (a.negative()) throw std::invalid_argument("oracle: sqrt of negative");
  if (a.is_zero()) return from_int(0);
  // Newton on y -> y*(3 - a*y^2)/2 converges to 1/sqrt(a); sqrt(a) = a*y.
  Fixed three = from_int(3);
  Fixed y = from_double(1.0 / std::sqrt(a.to_double()));
  for (int i = 0; i < 9; ++i) y = (y * (three - a * y * y)).div_small(2);
  return a * y;
}

namespace {

// atanh series: 2 * (u + u^3/3 + u^5/5 + ...), |u| <= ~1/3.
Fixed two_atanh(const Fixed& u) {
  Fixed u2 = u * u;
  Fixed term = u;
  Fixed sum = u;
  for (std::uint32_t j = 1; j < 400; ++j) {
    term = term * u2;
    Fixed contrib = term.div_small(2 * j + 1);
    if (contrib.is_zero()) break;
    sum = sum + contrib;
  }
  return sum.mul_small(2);
}

const Fixed& ln2() {
  static Fixed value = two_atanh(Fixed::from_int(1).div_small(3));
  return value;
}

}  // namespace

Fixed Fixed::ln(const Fixed& a) {
  if (a.negative() || a.is_zero()) throw std::invalid_argument("oracle: ln needs a > 0");
  Fixed x = a;
  Fixed one = from_int(1);
  Fixed two = from_int(2);
  long long d = 0;
  while (two <= x) {
    x = x.div_small(2);
    ++d;
  }
  while (x < one) {
    x = x.mul_small(2);
    --d;
  }
  // x in [1, 2): ln(x) = 2 atanh((x-1)/(x+1)).
  Fixed u = (x - one) * reciprocal(x + one);
  Fixed res = two_atanh(u);
  if (d != 0) {
    Fixed shift = ln2() * from_int(d);
    res = res + shift;
  }
  return res;
}

namespace {

Fixed ratio_log(long long num, double delta) {
  // ln(num / delta) with num a positive integer and delta an exact double.
  Fixed ratio = Fixed::from_int(num) * Fixed::reciprocal(Fixed::from_double(delta));
  return Fixed::ln(ratio);
}

}  // namespace

Fixed gap_pac_bayes(double kl, int m, double delta) {
  Fixed num = Fixed::from_double(kl) + ratio_log(4ll * m, delta);
  return Fixed::sqrt(num * Fixed::reciprocal(Fixed::from_int(2ll * m - 1)));
}

Fixed gap_pac_bayes_assumed(double eps, int m, double delta) {
  Fixed num = Fixed::from_double(eps) + ratio_log(8ll * m, delta);
  return Fixed::sqrt(num * Fixed::reciprocal(Fixed::from_int(2ll * m - 1)));
}

Fixed gap_hoeffding(int m, double delta) {
  Fixed num = ratio_log(1, delta);
  return Fixed::sqrt(num * Fixed::reciprocal(Fixed::from_int(2ll * m)));
}

Fixed gap_near_opt(double eps, int m, double delta) {
  Fixed num = Fixed::from_double(eps) + ratio_log(16ll * m, delta);
  return Fixed::sqrt(num * Fixed::reciprocal(Fixed::from_int(2ll * m - 1))).mul_small(2);
}

bool within_rel(double impl, const Fixed& exact, double tol) {
  Fixed diff = (Fixed::from_double(impl) - exact).abs();
  Fixed budget = exact.abs() * Fixed::from_double(tol);
  return diff <= budget;
}

}  // namespace oracle
