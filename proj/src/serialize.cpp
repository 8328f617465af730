#include "pappus/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

namespace pappus {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string rational(const mpq_class& q) { return q.get_num().get_str() + ":" + q.get_den().get_str(); }

template <class T>
std::string exact_triple(const Vec3<T>& v) {
  std::array<mpq_class, 3> q;
  if (v[2] != 0) {
    for (int k = 0; k < 3; ++k) {
      q[k] = mpq_class(v[k], v[2]);
      q[k].canonicalize();
    }
  } else {
    for (int k = 0; k < 3; ++k) q[k] = v[k];
  }
  return rational(q[0]) + "/" + rational(q[1]) + "/" + rational(q[2]);
}

}  // namespace

std::string fmt_num(double x) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string fmt_sig(double x, int digits) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string fmt_complex(cplx z) {
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  if (im == 0.0) return fmt_num(z.real());
  std::string s = fmt_num(z.real());
  s += im < 0 ? "-" : "+";
  s += fmt_num(std::abs(im)) + "i";
  return s;
}

std::string to_text(const ZPoint& p) { return exact_triple(p.v); }
std::string to_text(const ZLine& l) { return exact_triple(l.v); }
std::string to_text(const RPoint& p) { return fmt_num(p.v[0]) + "/" + fmt_num(p.v[1]) + "/" + fmt_num(p.v[2]); }
std::string to_text(const RLine& l) { return fmt_num(l.v[0]) + "/" + fmt_num(l.v[1]) + "/" + fmt_num(l.v[2]); }
std::string to_text(const CPoint& p) {
  return fmt_complex(p.v[0]) + "/" + fmt_complex(p.v[1]) + "/" + fmt_complex(p.v[2]);
}
std::string to_text(const CLine& l) {
  return fmt_complex(l.v[0]) + "/" + fmt_complex(l.v[1]) + "/" + fmt_complex(l.v[2]);
}

std::string to_text(const ZMap& m) {
  std::string s;
  for (int i = 0; i < 9; ++i) {
    if (i) s += ",";
    s += m.m[i / 3][i % 3].get_str();
  }
  return s;
}

std::string to_text(const Mat3d& m) {
  std::string s;
  for (int i = 0; i < 9; ++i) {
    if (i) s += ",";
    s += fmt_sig(m[i / 3][i % 3]);
  }
  return s;
}

double parse_double(const std::string& raw) {
  const std::string s = trim(raw);
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(x))
    throw Error(Errc::Parse, "not a finite number: '" + raw + "'");
  return x;
}

cplx parse_complex(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw Error(Errc::Parse, "empty complex number");
  if (s.back() != 'i') return {parse_double(s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not an exponent sign
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  auto imag_of = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(t[0] == '+' ? t.substr(1) : t);
  };
  if (cut == std::string::npos) return {0.0, imag_of(body)};
  return {parse_double(body.substr(0, cut)), imag_of(body.substr(cut))};
}

ZPoint parse_zpoint(const std::string& s) {
  const auto parts = split(s, '/');
  if (parts.size() != 2 && parts.size() != 3) throw Error(Errc::Parse, "point needs 2 or 3 coordinates: '" + s + "'");
  std::array<mpq_class, 3> q{0, 0, 1};
  for (std::size_t k = 0; k < parts.size(); ++k) {
    std::string t = trim(parts[k]);
    const auto colon = t.find(':');
    if (colon != std::string::npos) t[colon] = '/';
    if (t.empty() || t.find_first_not_of("+-0123456789/") != std::string::npos)
      throw Error(Errc::Parse, "bad rational '" + parts[k] + "'");
    if (t[0] == '+') t.erase(0, 1);
    try {
      q[k] = mpq_class(t);
    } catch (const std::invalid_argument&) {
      throw Error(Errc::Parse, "bad rational '" + parts[k] + "'");
    }
    if (q[k].get_den() == 0) throw Error(Errc::Parse, "zero denominator");
    q[k].canonicalize();
  }
  return zpoint(q[0], q[1], q[2]);
}

RPoint parse_rpoint(const std::string& s) {
  const auto parts = split(s, '/');
  if (parts.size() != 2 && parts.size() != 3) throw Error(Errc::Parse, "point needs 2 or 3 coordinates: '" + s + "'");
  Vec3<double> v{0, 0, 1};
  for (std::size_t k = 0; k < parts.size(); ++k) v[k] = parse_double(parts[k]);
  return {normalized(v)};
}

CPoint parse_cpoint(const std::string& s) {
  const auto parts = split(s, '/');
  if (parts.size() != 3) throw Error(Errc::Parse, "complex point needs 3 coordinates: '" + s + "'");
  Vec3<cplx> v;
  for (int k = 0; k < 3; ++k) v[k] = parse_complex(parts[k]);
  return {normalized(v)};
}

std::string coeff_text(const std::vector<cplx>& c) {
  if (c.empty()) return "[]";
  std::size_t k = 0;
  for (std::size_t j = 1; j < c.size(); ++j)
    if (std::abs(c[j]) > std::abs(c[k])) k = j;
  std::string out = "[";
  for (std::size_t j = 0; j < c.size(); ++j) {
    const cplx x = c[j] / c[k];
    if (j) out += ",";
    out += std::abs(x.imag()) > 1e-15 ? fmt_complex(x) : fmt_num(std::abs(x.real()) < 1e-15 ? 0.0 : x.real());
  }
  return out + "]";
}

}  // namespace pappus
