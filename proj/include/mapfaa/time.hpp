#ifndef MAPFAA_TIME_HPP
#define MAPFAA_TIME_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mapfaa {

// Exact non-negative rational time, with a distinguished +infinity.
// den == 0 encodes infinity (num is then 1). Finite values are kept
// gcd-normalized with den > 0. All arithmetic goes through 128-bit
// intermediates; results that do not fit in 64 bits are rejected with
// an overflow_error instead of being silently degraded.
class TimePoint {
 public:
  TimePoint() : num_(0), den_(1) {}

  static TimePoint from_int(long long v) {
    if (v < 0) throw std::invalid_argument("TimePoint: negative value");
    TimePoint t;
    t.num_ = v;
    t.den_ = 1;
    return t;
  }

  static TimePoint ratio(long long p, long long q) {
    if (q == 0) throw std::invalid_argument("TimePoint: zero denominator");
    if ((p < 0) != (q < 0) && p != 0)
      throw std::invalid_argument("TimePoint: negative value");
    if (p < 0) { p = -p; q = -q; }
    if (q < 0) q = -q;
    long long g = std::gcd(p, q);
    TimePoint t;
    t.num_ = p / g;
    t.den_ = q / g;
    return t;
  }

  static TimePoint infinity() {
    TimePoint t;
    t.num_ = 1;
    t.den_ = 0;
    return t;
  }

  bool is_infinite() const { return den_ == 0; }
  bool is_zero() const { return den_ != 0 && num_ == 0; }
  long long num() const { return num_; }
  long long den() const { return den_; }

  TimePoint operator+(const TimePoint& o) const {
    if (is_infinite() || o.is_infinite()) return infinity();
    __int128 n = (__int128)num_ * o.den_ + (__int128)o.num_ * den_;
    __int128 d = (__int128)den_ * o.den_;
    return make_checked(n, d);
  }

  // Subtraction requires a non-negative result; callers guard.
  TimePoint operator-(const TimePoint& o) const {
    if (o.is_infinite())
      throw std::invalid_argument("TimePoint: subtracting infinity");
    if (is_infinite()) return infinity();
    __int128 n = (__int128)num_ * o.den_ - (__int128)o.num_ * den_;
    if (n < 0) throw std::invalid_argument("TimePoint: negative difference");
    __int128 d = (__int128)den_ * o.den_;
    return make_checked(n, d);
  }

  TimePoint div_int(long long k) const {
    if (k <= 0) throw std::invalid_argument("TimePoint: non-positive divisor");
    if (is_infinite()) return infinity();
    return make_checked((__int128)num_, (__int128)den_ * k);
  }

  TimePoint mul_int(long long k) const {
    if (k < 0) throw std::invalid_argument("TimePoint: negative factor");
    if (is_infinite()) return infinity();
    return make_checked((__int128)num_ * k, (__int128)den_);
  }

  int compare(const TimePoint& o) const {
    if (is_infinite() && o.is_infinite()) return 0;
    if (is_infinite()) return 1;
    if (o.is_infinite()) return -1;
    __int128 lhs = (__int128)num_ * o.den_;
    __int128 rhs = (__int128)o.num_ * den_;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }

  bool operator==(const TimePoint& o) const { return compare(o) == 0; }
  bool operator!=(const TimePoint& o) const { return compare(o) != 0; }
  bool operator<(const TimePoint& o) const { return compare(o) < 0; }
  bool operator<=(const TimePoint& o) const { return compare(o) <= 0; }
  bool operator>(const TimePoint& o) const { return compare(o) > 0; }
  bool operator>=(const TimePoint& o) const { return compare(o) >= 0; }

  // Exact rendering: "p" for integers, "p/q" otherwise, "inf" for infinity.
  std::string str() const {
    if (is_infinite()) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Decimal with 6 fractional digits, display only.
  std::string decimal() const {
    if (is_infinite()) return "inf";
    __int128 scaled = ((__int128)num_ * 1000000 + den_ / 2) / den_;
    long long whole = (long long)(scaled / 1000000);
    long long frac = (long long)(scaled % 1000000);
    std::string f = std::to_string(frac);
    return std::to_string(whole) + "." + std::string(6 - f.size(), '0') + f;
  }

  static TimePoint parse(const std::string& s) {
    if (s == "inf") return infinity();
    auto slash = s.find('/');
    if (slash == std::string::npos) return from_int(std::stoll(s));
    return ratio(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }

 private:
  static TimePoint make_checked(__int128 n, __int128 d) {
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || d > INT64_MAX)
      throw std::overflow_error(
          "TimePoint: rational exceeds 64-bit width (instance rejected)");
    TimePoint t;
    t.num_ = (long long)n;
    t.den_ = (long long)d;
    return t;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 r = a % b; a = b; b = r; }
    return a == 0 ? 1 : a;
  }

  long long num_;
  long long den_;  // 0 = infinity
};

inline TimePoint min(const TimePoint& a, const TimePoint& b) { return a < b ? a : b; }
inline TimePoint max(const TimePoint& a, const TimePoint& b) { return a < b ? b : a; }

// Interval with per-endpoint open/closed flags. Valid iff lo < hi, or
// lo == hi with both endpoints closed (a single point). hi == infinity
// forces hi_closed == false.
struct Interval {
  TimePoint lo;
  TimePoint hi;
  bool lo_closed = true;
  bool hi_closed = false;

  // Constructs without checking; callers that require a non-empty interval
  // test valid() (planners routinely build and discard empty ranges).
  static Interval make(TimePoint lo, TimePoint hi, bool lo_closed, bool hi_closed) {
    return Interval{lo, hi, lo_closed, hi_closed};
  }

  // [l, r)
  static Interval half_open(TimePoint l, TimePoint r) { return make(l, r, true, false); }
  // [l, r]
  static Interval closed(TimePoint l, TimePoint r) { return make(l, r, true, true); }
  // [t, t]
  static Interval point(TimePoint t) { return make(t, t, true, true); }
  // [l, inf)
  static Interval ray(TimePoint l) { return make(l, TimePoint::infinity(), true, false); }

  bool valid() const {
    if (hi.is_infinite() && hi_closed) return false;
    int c = lo.compare(hi);
    if (c > 0) return false;
    if (c == 0) return lo_closed && hi_closed;
    return true;
  }

  bool contains(const TimePoint& t) const {
    int cl = lo.compare(t);
    if (cl > 0 || (cl == 0 && !lo_closed)) return false;
    int ch = t.compare(hi);
    if (ch > 0 || (ch == 0 && !hi_closed)) return false;
    return true;
  }

  bool is_point() const { return lo == hi; }
  bool unbounded() const { return hi.is_infinite(); }

  bool operator==(const Interval& o) const {
    return lo == o.lo && hi == o.hi && lo_closed == o.lo_closed &&
           hi_closed == o.hi_closed;
  }

  std::string str() const {
    return std::string(lo_closed ? "[" : "(") + lo.str() + ", " + hi.str() +
           (hi_closed ? "]" : ")");
  }
};

inline bool overlap(const Interval& a, const Interval& b) {
  const TimePoint& max_lo = mapfaa::max(a.lo, b.lo);
  const TimePoint& min_hi = mapfaa::min(a.hi, b.hi);
  int c = max_lo.compare(min_hi);
  if (c < 0) return true;
  if (c > 0) return false;
  return a.contains(max_lo) && b.contains(max_lo);
}

// Greatest lower bound of a ∩ b. Precondition: overlap(a, b).
inline TimePoint infimum_of_intersection(const Interval& a, const Interval& b) {
  if (!overlap(a, b))
    throw std::invalid_argument("infimum_of_intersection: disjoint intervals");
  return mapfaa::max(a.lo, b.lo);
}

// base \ cut as 0, 1, or 2 maximal valid intervals.
inline std::vector<Interval> subtract(const Interval& base, const Interval& cut) {
  std::vector<Interval> out;
  if (!overlap(base, cut)) {
    out.push_back(base);
    return out;
  }
  // Left piece: points of base below cut's lower bound. Overlap guarantees
  // cut.lo <= base.hi, and when they coincide both endpoints are closed, so
  // the piece stays inside base.
  {
    Interval left{base.lo, cut.lo, base.lo_closed, !cut.lo_closed};
    if (left.valid()) out.push_back(left);
  }
  // Right piece: points of base above cut's upper bound.
  if (!cut.hi.is_infinite()) {
    Interval right{cut.hi, base.hi, !cut.hi_closed, base.hi_closed};
    if (right.valid()) out.push_back(right);
  }
  return out;
}

}  // namespace mapfaa

#endif  // MAPFAA_TIME_HPP
