#include "sgr/laurent.hpp"

#include <cctype>
#include <sstream>

namespace sgr {

LSeries inverse(const LSeries& s) {
  if (s.c.empty()) throw std::invalid_argument("inverse of zero series");
  int d = s.ord();
  Rat c = s.c.begin()->second;
  if (s.c.size() == 1) return LSeries::monomial(-d, 1 / c, s.prec >= kExactPrec
                                                               ? kExactPrec
                                                               : sat_prec(static_cast<long>(s.prec) - 2 * d));
  if (s.prec >= kExactPrec)
    throw precision_error("inverse of a non-monomial series needs a finite truncation");
  // s = c z^d (1 + u), ord(u) >= 1
  LSeries u = s.shifted(-d).scaled(1 / c) - LSeries::monomial(0, Rat(1));
  int q = sat_prec(static_cast<long>(s.prec) - d);
  LSeries acc = LSeries::monomial(0, Rat(1), q);
  LSeries pw = acc;
  int uord = std::max(u.ord(), 1);
  for (int k = 1; k * uord < q; ++k) {
    pw = (pw * u.scaled(-1)).truncated(q);
    acc += pw;
  }
  return acc.shifted(-d).scaled(1 / c).truncated(sat_prec(static_cast<long>(s.prec) - 2 * d));
}

PuiseuxElement embed_base(const LSeries& f, const CoverShape& shape) {
  PuiseuxElement v(shape);
  for (int i = 0; i < shape.r(); ++i) v.comp[i] = f.dilated(shape.e[i]);
  return v;
}

LSeries trace(const PuiseuxElement& v) {
  LSeries out;
  long prec = kExactPrec;
  for (int i = 0; i < v.shape.r(); ++i)
    prec = std::min(prec, static_cast<long>(ceil_div(v.comp[i].prec, v.shape.e[i])));
  out.prec = sat_prec(prec);
  for (int i = 0; i < v.shape.r(); ++i) {
    int e = v.shape.e[i];
    for (const auto& [k, c] : v.comp[i].c)
      if (divides(e, k) && k / e < out.prec) out.c[k / e] += c * e;
  }
  out.normalize();
  return out;
}

Rat t2_pair(const PuiseuxElement& a, const PuiseuxElement& b) {
  LSeries tr = trace(a * b);
  if (!tr.knows(-1)) throw precision_error("t2_pair: residue coefficient beyond precision");
  return tr.coeff(-1);
}

bool is_omitted_index(int m, const CoverShape& shape) {
  int rn = shape.r() - shape.n();
  return shape.n() > shape.r() && rn % 2 == 0 && m == rn / 2;
}

namespace {
// Balanced monomial for the unramified case: exponents (s+1,...,s+1,s,...,s)
// with m = s*r + t, 0 <= t < r; signed codimension of v V+ in V+ equals m.
std::vector<int> balanced_exponents(int m, int r) {
  int s = floor_div(m, r), t = m - s * r;
  std::vector<int> a(r, s);
  for (int i = 0; i < t; ++i) a[i] = s + 1;
  return a;
}
}  // namespace

std::vector<int> vm_exponents(int m, const CoverShape& shape) {
  int r = shape.r(), n = shape.n();
  if (is_omitted_index(m, shape))
    throw std::invalid_argument("index m = (r-n)/2 has no normalizing monomial");
  if (n == r) return balanced_exponents(m, r);
  if (2 * m <= r - n) {
    // -m = q(n-r) + p with 0 <= p < n-r; v_m = (z^{-1} z_.)^q / balanced(p).
    int q = floor_div(-m, n - r), p = -m - q * (n - r);
    std::vector<int> b = balanced_exponents(p, r);
    std::vector<int> a(r);
    for (int i = 0; i < r; ++i) a[i] = q * (1 - shape.e[i]) - b[i];
    return a;
  }
  // v_m = (z^{-1} z_.) v_{r-n-m}^{-1}
  std::vector<int> a = vm_exponents(r - n - m, shape);
  for (int i = 0; i < r; ++i) a[i] = (1 - shape.e[i]) - a[i];
  return a;
}

PuiseuxElement vm_element(int m, const CoverShape& shape) {
  std::vector<int> a = vm_exponents(m, shape);
  PuiseuxElement v(shape);
  for (int i = 0; i < shape.r(); ++i) v.comp[i] = LSeries::monomial(a[i], Rat(1));
  return v;
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("series parse error at position " + std::to_string(i) +
                                ": " + what + " in '" + s + "'");
  }
};

long parse_int(Cursor& cur) {
  size_t start = cur.i;
  if (!cur.done() && (cur.peek() == '+' || cur.peek() == '-')) ++cur.i;
  while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) ++cur.i;
  if (cur.i == start || (cur.i == start + 1 && !std::isdigit(static_cast<unsigned char>(cur.s[start]))))
    cur.fail("expected integer");
  return std::stol(cur.s.substr(start, cur.i - start));
}

Rat parse_number(Cursor& cur) {
  long num = parse_int(cur);
  if (!cur.done() && cur.peek() == '/') {
    ++cur.i;
    long den = parse_int(cur);
    return rat(num, den);
  }
  return Rat(num);
}

// term := coeff | coeff '*' var | var, where var := zN ['^' int]
void parse_term(Cursor& cur, int var_index, std::map<int, Rat>& acc, int outer_sign) {
  cur.skip_ws();
  Rat coeff(outer_sign);
  bool have_coeff = false;
  if (cur.done()) cur.fail("expected term");
  if (cur.peek() == '-' || cur.peek() == '+' ||
      std::isdigit(static_cast<unsigned char>(cur.peek()))) {
    coeff *= parse_number(cur);
    have_coeff = true;
    cur.skip_ws();
    if (!cur.done() && cur.peek() == '*') {
      ++cur.i;
      cur.skip_ws();
    } else if (cur.done() || cur.peek() == '+' || cur.peek() == '-' || cur.peek() == ';') {
      acc[0] += coeff;  // bare constant
      return;
    }
  }
  if (cur.done() || cur.peek() != 'z') cur.fail("expected variable");
  ++cur.i;
  size_t dstart = cur.i;
  while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) ++cur.i;
  int idx = (cur.i == dstart) ? 1 : std::stoi(cur.s.substr(dstart, cur.i - dstart));
  if (idx != var_index) cur.fail("variable z" + std::to_string(idx) + " does not belong here");
  int expo = 1;
  if (!cur.done() && cur.peek() == '^') {
    ++cur.i;
    expo = static_cast<int>(parse_int(cur));
  }
  (void)have_coeff;
  acc[expo] += coeff;
}

LSeries parse_component(const std::string& text, int var_index, int prec_hint) {
  Cursor cur{text};
  std::map<int, Rat> acc;
  cur.skip_ws();
  if (cur.done()) cur.fail("empty component");
  bool first = true;
  while (true) {
    cur.skip_ws();
    if (cur.done()) break;
    int sign = 1;
    if (cur.peek() == '+') {
      if (first) cur.fail("unexpected leading '+'");
      ++cur.i;
    } else if (cur.peek() == '-') {
      if (!first) {
        sign = -1;
        ++cur.i;
      }
    } else if (!first) {
      cur.fail("expected '+' or '-' between terms");
    }
    parse_term(cur, var_index, acc, sign);
    first = false;
  }
  return LSeries(std::move(acc), prec_hint);
}

}  // namespace

LSeries parse_lseries(const std::string& text, int var_index, int prec_hint) {
  return parse_component(text, var_index, prec_hint);
}

PuiseuxElement parse_series(const std::string& text, const CoverShape& shape, int prec_hint) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (static_cast<int>(parts.size()) != shape.r())
    throw shape_error("series has " + std::to_string(parts.size()) + " components, shape needs " +
                      std::to_string(shape.r()));
  PuiseuxElement v(shape);
  for (int i = 0; i < shape.r(); ++i) v.comp[i] = parse_component(parts[i], i + 1, prec_hint);
  return v;
}

std::string format_lseries(const LSeries& s, const std::string& var) {
  if (s.c.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, v] : s.c) {
    Rat a = v;
    if (!first) {
      if (a < 0) {
        out << " - ";
        a = -a;
      } else {
        out << " + ";
      }
    }
    first = false;
    out << a.get_str();
    if (k != 0) out << "*" << var << "^" << k;
  }
  return out.str();
}

std::string format_series(const PuiseuxElement& v) {
  std::ostringstream out;
  for (int i = 0; i < v.shape.r(); ++i) {
    if (i) out << "; ";
    out << format_lseries(v.comp[i], "z" + std::to_string(i + 1));
  }
  return out.str();
}

}  // namespace sgr
