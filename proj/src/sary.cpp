#include "cantor/sary.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cantor {

namespace {

BigNat pow_bignat(int base, int exp) {
  BigNat r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

SAryReal::SAryReal(int base, BigNat int_part, std::vector<int> frac,
                   std::vector<int> period)
    : base_(base),
      int_part_(std::move(int_part)),
      frac_(std::move(frac)),
      period_(std::move(period)) {
  if (base_ < 2) throw std::invalid_argument("base must be >= 2");
  if (int_part_ < 0) throw std::invalid_argument("negative value");
  for (int d : frac_)
    if (d < 0 || d >= base_)
      throw std::invalid_argument("fractional digit outside [0, base)");
  for (int d : period_)
    if (d < 0 || d >= base_)
      throw std::invalid_argument("period digit outside [0, base)");
  normalize();
}

void SAryReal::normalize() {
  if (!period_.empty() &&
      std::all_of(period_.begin(), period_.end(),
                  [&](int d) { return d == 0; }))
    period_.clear();

  // x.d1..dF(base-1 base-1 ...) is the non-normal twin of a terminating
  // value; carry one unit into the finite part.
  if (!period_.empty() &&
      std::all_of(period_.begin(), period_.end(),
                  [&](int d) { return d == base_ - 1; })) {
    period_.clear();
    int i = static_cast<int>(frac_.size()) - 1;
    for (; i >= 0; --i) {
      if (frac_[static_cast<std::size_t>(i)] + 1 < base_) {
        ++frac_[static_cast<std::size_t>(i)];
        frac_.resize(static_cast<std::size_t>(i) + 1);
        break;
      }
      frac_[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) {
      int_part_ += 1;
      frac_.clear();
    }
  }

  if (period_.empty() && exact_) {
    while (!frac_.empty() && frac_.back() == 0) frac_.pop_back();
  }
}

bool SAryReal::is_zero() const {
  return int_part_ == 0 && frac_.empty() && period_.empty() && exact_;
}

int SAryReal::fractional_digit(int j) const {
  if (j < 1) throw std::invalid_argument("digit positions start at 1");
  const int F = stored_digits();
  if (j <= F) return frac_[static_cast<std::size_t>(j - 1)];
  if (!period_.empty())
    return period_[static_cast<std::size_t>((j - 1 - F) %
                                            static_cast<int>(period_.size()))];
  if (exact_) return 0;
  throw std::out_of_range("digit beyond the stored truncation");
}

Rational SAryReal::stored_value() const {
  Rational v(int_part_);
  BigNat scale = 1;
  for (int d : frac_) {
    scale *= base_;
    v += Rational(d, scale);
  }
  if (!period_.empty()) {
    BigNat num = 0;
    for (int d : period_) num = num * base_ + d;
    const BigNat den = pow_bignat(base_, static_cast<int>(period_.size())) - 1;
    v += Rational(num, den) / Rational(scale);
  }
  return v;
}

Rational SAryReal::to_rational() const {
  if (!exact_)
    throw std::logic_error("to_rational on a truncated representation");
  return stored_value();
}

SAryReal SAryReal::from_rational(const Rational& x, int base) {
  if (x < 0) throw std::invalid_argument("negative value");
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const BigNat num = numerator(x);
  const BigNat den = denominator(x);
  BigNat int_part = num / den;
  BigNat rem = num % den;

  std::vector<int> digits;
  std::map<BigNat, int> seen;  // remainder -> index of the digit it produces
  std::vector<int> frac, period;
  while (rem != 0) {
    auto it = seen.find(rem);
    if (it != seen.end()) {
      frac.assign(digits.begin(), digits.begin() + it->second);
      period.assign(digits.begin() + it->second, digits.end());
      return SAryReal(base, std::move(int_part), std::move(frac),
                      std::move(period));
    }
    seen.emplace(rem, static_cast<int>(digits.size()));
    rem *= base;
    digits.push_back(static_cast<int>(rem / den));
    rem %= den;
  }
  return SAryReal(base, std::move(int_part), std::move(digits));
}

SAryReal SAryReal::parse(std::string_view text, int base) {
  if (text.find('/') != std::string_view::npos) {
    const auto slash = text.find('/');
    const BigNat num(std::string(text.substr(0, slash)));
    const BigNat den(std::string(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return from_rational(Rational(num, den), base);
  }
  if (base > 10)
    throw std::invalid_argument(
        "digit literals support base <= 10; use num/den form");

  auto digit_of = [&](char c) {
    if (c < '0' || c >= '0' + base)
      throw std::invalid_argument(std::string("invalid base-") +
                                  std::to_string(base) + " digit '" + c + "'");
    return c - '0';
  };

  std::size_t pos = 0;
  BigNat int_part = 0;
  while (pos < text.size() && text[pos] != '.') {
    int_part = int_part * base + digit_of(text[pos]);
    ++pos;
  }
  std::vector<int> frac, period;
  if (pos < text.size()) {
    ++pos;  // skip '.'
    while (pos < text.size() && text[pos] != '(') {
      frac.push_back(digit_of(text[pos]));
      ++pos;
    }
    if (pos < text.size()) {
      if (text.back() != ')')
        throw std::invalid_argument("unterminated repeating block");
      for (++pos; pos + 1 < text.size(); ++pos)
        period.push_back(digit_of(text[pos]));
      if (period.empty())
        throw std::invalid_argument("empty repeating block");
    }
  }
  return SAryReal(base, std::move(int_part), std::move(frac),
                  std::move(period));
}

SAryReal SAryReal::shifted(int k) const {
  SAryReal x = *this;
  while (k > 0) {
    int d;
    if (!x.frac_.empty()) {
      d = x.frac_.front();
      x.frac_.erase(x.frac_.begin());
    } else if (!x.period_.empty()) {
      d = x.period_.front();
      std::rotate(x.period_.begin(), x.period_.begin() + 1, x.period_.end());
    } else if (x.exact_) {
      d = 0;
    } else {
      throw std::out_of_range("shift beyond the stored truncation");
    }
    x.int_part_ = x.int_part_ * base_ + d;
    --k;
  }
  while (k < 0) {
    const int d = static_cast<int>(x.int_part_ % base_);
    x.int_part_ /= base_;
    x.frac_.insert(x.frac_.begin(), d);
    ++k;
  }
  x.normalize();
  return x;
}

SAryReal SAryReal::truncated(int K) const {
  if (K < 0) throw std::invalid_argument("negative truncation length");
  SAryReal x(base_, int_part_, {});
  x.frac_.reserve(static_cast<std::size_t>(K));
  for (int j = 1; j <= K; ++j) x.frac_.push_back(fractional_digit(j));
  x.period_.clear();
  x.exact_ = false;
  return x;
}

std::string SAryReal::to_string() const {
  std::ostringstream os;
  os << int_part_;
  if (!frac_.empty() || !period_.empty() || !exact_) {
    os << '.';
    for (int d : frac_) os << d;
    if (!period_.empty()) {
      os << '(';
      for (int d : period_) os << d;
      os << ')';
    }
    if (!exact_) os << "...";
  }
  return os.str();
}

}  // namespace cantor
