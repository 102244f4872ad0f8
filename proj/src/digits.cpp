#include "cantor/digits.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace cantor {

namespace {

int parse_int(std::string_view text, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument(std::string("cannot parse ") + what + ": '" +
                                std::string(text) + "'");
  return value;
}

std::string strip_ws(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

}  // namespace

CantorSystem::CantorSystem(int p, std::vector<int> digit_set)
    : p_(p), A_(std::move(digit_set)) {
  if (p_ < 3) throw std::invalid_argument("p must be >= 3");
  if (A_.size() < 2) throw std::invalid_argument("need at least 2 digits in A");
  if (static_cast<int>(A_.size()) >= p_)
    throw std::invalid_argument("A must be a proper subset: s < p");
  for (std::size_t i = 0; i < A_.size(); ++i) {
    if (A_[i] < 0 || A_[i] > p_ - 1)
      throw std::invalid_argument("digit " + std::to_string(A_[i]) +
                                  " outside [0, p-1]");
    if (i > 0 && A_[i] <= A_[i - 1])
      throw std::invalid_argument("A must be strictly increasing");
  }
  h_inv_.assign(static_cast<std::size_t>(p_), -1);
  for (std::size_t i = 0; i < A_.size(); ++i)
    h_inv_[static_cast<std::size_t>(A_[i])] = static_cast<int>(i);

  const int s = static_cast<int>(A_.size());
  alpha_hp_ = log(HighPrec(p_)) / log(HighPrec(s));
  alpha_ = to_double(alpha_hp_);

  // p == s^e detection makes alpha exactly the integer e.
  BigNat power(s);
  int e = 1;
  while (power < p_) {
    power *= s;
    ++e;
  }
  if (power == p_) {
    alpha_int_ = e;
    alpha_hp_ = HighPrec(e);
    alpha_ = static_cast<double>(e);
  }
}

CantorSystem CantorSystem::parse(std::string_view spec) {
  const std::string text = strip_ws(spec);
  const auto semi = text.find(';');
  if (semi == std::string::npos)
    throw std::invalid_argument("system spec must look like 'p=3;A=0,2'");
  const std::string p_part = text.substr(0, semi);
  const std::string a_part = text.substr(semi + 1);
  if (p_part.rfind("p=", 0) != 0 || a_part.rfind("A=", 0) != 0)
    throw std::invalid_argument("system spec must look like 'p=3;A=0,2'");
  const int p = parse_int(std::string_view(p_part).substr(2), "p");

  std::vector<int> A;
  std::string digits = a_part.substr(2);
  std::size_t pos = 0;
  while (pos <= digits.size()) {
    const auto comma = digits.find(',', pos);
    const auto piece = std::string_view(digits).substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    A.push_back(parse_int(piece, "digit of A"));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  for (int a : A)
    if (a > p - 1)
      throw std::invalid_argument("digit " + std::to_string(a) +
                                  " >= p; digit must be <= p-1=" +
                                  std::to_string(p - 1));
  return CantorSystem(p, std::move(A));
}

std::optional<int> CantorSystem::h_inverse(int a) const {
  if (a < 0 || a >= p_) return std::nullopt;
  const int i = h_inv_[static_cast<std::size_t>(a)];
  if (i < 0) return std::nullopt;
  return i;
}

std::string CantorSystem::to_string() const {
  std::ostringstream os;
  os << "p=" << p_ << ";A=";
  for (std::size_t i = 0; i < A_.size(); ++i) {
    if (i) os << ',';
    os << A_[i];
  }
  return os.str();
}

DigitString to_digits(const BigNat& n, int base) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  if (n < 0) throw std::invalid_argument("negative value");
  DigitString out{base, {}};
  if (fits_uint64(n)) {
    std::uint64_t v = to_uint64(n);
    const std::uint64_t b = static_cast<std::uint64_t>(base);
    while (v != 0) {
      out.digits.push_back(static_cast<int>(v % b));
      v /= b;
    }
  } else {
    BigNat v = n;
    while (v != 0) {
      out.digits.push_back(static_cast<int>(v % base));
      v /= base;
    }
  }
  std::reverse(out.digits.begin(), out.digits.end());
  return out;
}

BigNat from_digits(const DigitString& d) {
  if (d.base < 2) throw std::invalid_argument("base must be >= 2");
  BigNat v = 0;
  for (int digit : d.digits) {
    if (digit < 0 || digit >= d.base)
      throw std::invalid_argument("digit " + std::to_string(digit) +
                                  " outside [0, base)");
    v = v * d.base + digit;
  }
  return v;
}

BigNat cantor_integer(const CantorSystem& sys, const BigNat& n) {
  if (n < 1)
    throw std::invalid_argument("cantor_integer indexes from n = 1");
  DigitString d = to_digits(n, sys.s());
  BigNat v = 0;
  for (int digit : d.digits) v = v * sys.p() + sys.h(digit);
  return v;
}

BigNat index_zero_value(const CantorSystem& sys) { return BigNat(sys.h(0)); }

CantorMembership is_cantor_integer(const CantorSystem& sys, const BigNat& m) {
  if (m < 0) throw std::invalid_argument("negative value");
  DigitString d = to_digits(m, sys.p());
  BigNat index = 0;
  bool first = true;
  bool in_image = true;
  for (int digit : d.digits) {
    const auto i = sys.h_inverse(digit);
    if (!i) return {false, std::nullopt};
    // A leading digit h(0) != 0 passes the membership filter but lies
    // outside the image of n -> a_n (indices carry no leading zeros).
    if (first && *i == 0) in_image = false;
    first = false;
    index = index * sys.s() + *i;
  }
  if (!in_image || index == 0) return {true, std::nullopt};
  return {true, index};
}

void enumerate_by_filter(const CantorSystem& sys, const BigNat& lo,
                         const BigNat& hi,
                         const std::function<bool(const BigNat&)>& visit) {
  if (hi < lo) return;
  // Digit test written directly on machine words when the range allows it;
  // this loop is the ground truth the digit-map construction is checked
  // against, so it stays a plain per-integer scan.
  if (fits_uint64(hi)) {
    const std::uint64_t p = static_cast<std::uint64_t>(sys.p());
    bool allowed[64] = {};
    for (int a : sys.A()) allowed[a] = true;
    const std::uint64_t start = lo < 1 ? 1 : to_uint64(lo);
    const std::uint64_t stop = to_uint64(hi);
    for (std::uint64_t m = start; m <= stop; ++m) {
      std::uint64_t v = m;
      bool ok = true;
      while (v != 0) {
        if (!allowed[v % p]) {
          ok = false;
          break;
        }
        v /= p;
      }
      if (ok && !visit(BigNat(m))) return;
    }
    return;
  }
  for (BigNat m = lo < 1 ? BigNat(1) : lo; m <= hi; ++m) {
    BigNat v = m;
    bool ok = true;
    while (v != 0) {
      if (!sys.h_inverse(static_cast<int>(v % sys.p()))) {
        ok = false;
        break;
      }
      v /= sys.p();
    }
    if (ok && !visit(m)) return;
  }
}

std::vector<BigNat> enumerate_by_filter(const CantorSystem& sys,
                                        const BigNat& limit) {
  std::vector<BigNat> out;
  enumerate_by_filter(sys, 1, limit, [&](const BigNat& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace cantor
