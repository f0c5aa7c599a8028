#include "trackforge/laurent.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "trackforge/error.hpp"

namespace trackforge {

LaurentPoly2::LaurentPoly2(Coefficient constant) {
  if (constant != 0) terms_[{0, 0}] = constant;
}

LaurentPoly2 LaurentPoly2::monomial(Coefficient coef, int v_exp, int z_exp) {
  LaurentPoly2 p;
  if (coef != 0) p.terms_[{v_exp, z_exp}] = coef;
  return p;
}

const LaurentPoly2& LaurentPoly2::delta() {
  static const LaurentPoly2 value = monomial(1, -1, -1) - monomial(1, 1, -1);
  return value;
}

std::vector<LaurentPoly2::Term> LaurentPoly2::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.push_back({e.first, e.second, c});
  return out;
}

LaurentPoly2::Coefficient LaurentPoly2::coefficient(int v_exp, int z_exp) const {
  auto it = terms_.find({v_exp, z_exp});
  return it == terms_.end() ? 0 : it->second;
}

void LaurentPoly2::add_scaled(const LaurentPoly2& other, Coefficient coef, int dv, int dz) {
  if (coef == 0) return;
  for (const auto& [e, c] : other.terms_) {
    Exponents key{e.first + dv, e.second + dz};
    auto [it, inserted] = terms_.try_emplace(key, c * coef);
    if (!inserted) {
      it->second += c * coef;
      if (it->second == 0) terms_.erase(it);
    }
  }
}

LaurentPoly2& LaurentPoly2::operator+=(const LaurentPoly2& other) {
  add_scaled(other, 1, 0, 0);
  return *this;
}

LaurentPoly2& LaurentPoly2::operator-=(const LaurentPoly2& other) {
  add_scaled(other, -1, 0, 0);
  return *this;
}

LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
  LaurentPoly2 out;
  for (const auto& [e, c] : a.terms_) out.add_scaled(b, c, e.first, e.second);
  return out;
}

LaurentPoly2& LaurentPoly2::operator*=(const LaurentPoly2& other) {
  *this = *this * other;
  return *this;
}

LaurentPoly2 LaurentPoly2::operator-() const {
  LaurentPoly2 out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly2 LaurentPoly2::pow(unsigned n) const {
  LaurentPoly2 out(1);
  for (unsigned i = 0; i < n; ++i) out *= *this;
  return out;
}

LaurentPoly2 LaurentPoly2::mirror_transform() const {
  LaurentPoly2 out;
  for (const auto& [e, c] : terms_) {
    out.terms_[{-e.first, e.second}] = (e.second % 2 == 0) ? c : -c;
  }
  return out;
}

std::string LaurentPoly2::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += std::to_string(c) + "*v^" + std::to_string(e.first) + "*z^" + std::to_string(e.second);
  }
  return out;
}

namespace {

class TermReader {
 public:
  explicit TermReader(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char ch) {
    if (!accept(ch)) fail(std::string("expected '") + ch + "'");
  }
  std::int64_t integer() {
    skip_space();
    std::int64_t value = 0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    if (begin < end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("expected integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial: " + what, 1, static_cast<int>(pos_) + 1);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly2 LaurentPoly2::parse(std::string_view text) {
  TermReader in(text);
  LaurentPoly2 out;
  if (in.done()) in.fail("empty input");
  if (in.accept('0') && in.done()) return out;
  TermReader reader(text);
  do {
    const auto c = reader.integer();
    reader.expect('*');
    reader.expect('v');
    reader.expect('^');
    const auto ve = static_cast<int>(reader.integer());
    reader.expect('*');
    reader.expect('z');
    reader.expect('^');
    const auto ze = static_cast<int>(reader.integer());
    out += monomial(c, ve, ze);
  } while (reader.accept('+'));
  if (!reader.done()) reader.fail("trailing characters");
  return out;
}

std::pair<int, int> LaurentPoly2::v_range() const {
  if (terms_.empty()) throw DomainError("range of the zero polynomial is undefined");
  return {terms_.begin()->first.first, terms_.rbegin()->first.first};
}

std::map<int, LaurentPoly2::Coefficient> LaurentPoly2::v_coefficient(int k) const {
  std::map<int, Coefficient> out;
  for (auto it = terms_.lower_bound({k, std::numeric_limits<int>::min()});
       it != terms_.end() && it->first.first == k; ++it) {
    out[it->first.second] = it->second;
  }
  return out;
}

VRange range(const LaurentPoly2& p) {
  auto [e, E] = p.v_range();
  return {e, E};
}

}  // namespace trackforge
