#include <cctype>
#include <json.hpp>

#include "cremona/cli.hpp"
#include "cremona/error.hpp"

namespace cremona {
namespace {

[[noreturn]] void syntax(const std::string& msg, std::size_t offset, const std::string& text) {
  throw Error(ErrorCode::kSyntax, msg + " at offset " + std::to_string(offset) + " in \"" + text + "\"");
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

struct Piece {
  std::string text;
  std::size_t offset;
};

// Splits at `sep` outside parentheses and brackets.
std::vector<Piece> split_top(const std::string& s, std::size_t base, char sep, const std::string& whole) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') {
      if (--depth < 0) syntax("unbalanced '" + std::string(1, c) + "'", base + i, whole);
    }
    if (c == sep && depth == 0) {
      out.push_back({s.substr(start, i - start), base + start});
      start = i + 1;
    }
  }
  if (depth != 0) syntax("unbalanced parentheses", base + s.size(), whole);
  out.push_back({s.substr(start), base + start});
  return out;
}

// Contents between `open` at s[pos] and the matching `close`, which must end s.
Piece enclosed(const std::string& s, std::size_t pos, char open, char close, const std::string& whole) {
  std::size_t a = pos;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  if (a >= s.size() || s[a] != open) syntax(std::string("expected '") + open + "'", a, whole);
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (b <= a + 1 || s[b - 1] != close) syntax(std::string("expected '") + close + "' at the end", b, whole);
  return {s.substr(a + 1, b - a - 2), a + 1};
}

Poly parse_piece(const Piece& p, const std::vector<std::string>& vars, const std::string& whole) {
  try {
    return Poly::parse(p.text, vars);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSyntax) throw;
    throw Error(ErrorCode::kSyntax, "in the entry at offset " + std::to_string(p.offset) + " of \"" + whole +
                                        "\": " + e.what());
  }
}

// An affine entry: a polynomial, or num/den split at the last top-level '/'
// whose right side is not a constant.
std::pair<Poly, Poly> parse_fraction(const Piece& p, const std::string& whole) {
  const std::vector<std::string> xy = {"x", "y"};
  const auto parts = split_top(p.text, p.offset, '/', whole);
  if (parts.size() > 1) {
    const Piece& den_text = parts.back();
    const Poly den = parse_piece(den_text, xy, whole);
    if (!den.is_constant() || den.is_zero()) {
      if (den.is_zero()) throw Error(ErrorCode::kZeroInput, "zero denominator at offset " + std::to_string(den_text.offset));
      const std::size_t cut = den_text.offset - p.offset - 1;
      return {parse_piece({p.text.substr(0, cut), p.offset}, xy, whole), den};
    }
  }
  return {parse_piece(p, xy, whole), Poly::constant(xy, 1)};
}

std::string fraction_to_string(const Poly& num, const Poly& den) {
  if (den.is_constant() && den.constant_term() == 1) return num.to_string();
  return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

}  // namespace

bool operator==(const MapSpec& a, const MapSpec& b) {
  if (a.form.index() != b.form.index()) return false;
  if (const auto* x = std::get_if<AffineMap2>(&a.form)) {
    const auto& y = std::get<AffineMap2>(b.form);
    for (int i = 0; i < 2; ++i) {
      if (!(x->num[i] == y.num[i]) || !(x->den[i] == y.den[i])) return false;
    }
    return true;
  }
  if (const auto* x = std::get_if<MonomialMap>(&a.form)) return x->matrix == std::get<MonomialMap>(b.form).matrix;
  if (const auto* x = std::get_if<PolyTuple>(&a.form)) return *x == std::get<PolyTuple>(b.form);
  return std::get<BuiltinRef>(a.form) == std::get<BuiltinRef>(b.form);
}

MapSpec parse_map_spec(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) syntax("empty map specification", 0, text);
  const std::size_t lead = text.find(t);

  if (t[0] == 'P' && t.size() > 1 && std::isdigit(static_cast<unsigned char>(t[1]))) {
    const std::size_t colon = t.find(':');
    if (colon == std::string::npos) syntax("expected ':' after the dimension", t.size(), text);
    int d = 0;
    try {
      d = std::stoi(t.substr(1, colon - 1));
    } catch (const std::exception&) {
      syntax("bad dimension", lead + 1, text);
    }
    if (d < 1 || d > 9) syntax("dimension must be between 1 and 9", lead + 1, text);
    const Piece body = enclosed(t, colon + 1, '[', ']', text);
    const auto parts = split_top(body.text, lead + body.offset, ':', text);
    if (static_cast<int>(parts.size()) != d + 1) {
      throw Error(ErrorCode::kArity, "expected " + std::to_string(d + 1) + " coordinates, got " +
                                         std::to_string(parts.size()) + " in \"" + text + "\"");
    }
    std::vector<Poly> coords;
    for (const auto& p : parts) coords.push_back(parse_piece(p, default_vars(d + 1), text));
    return MapSpec{ProjMap(PolyTuple(std::move(coords))).coords()};
  }

  if (t.rfind("A2:", 0) == 0) {
    const Piece body = enclosed(t, 3, '(', ')', text);
    const auto parts = split_top(body.text, lead + body.offset, ',', text);
    if (parts.size() != 2) {
      throw Error(ErrorCode::kArity, "expected 2 affine components, got " + std::to_string(parts.size()));
    }
    const auto [n1, d1] = parse_fraction(parts[0], text);
    const auto [n2, d2] = parse_fraction(parts[1], text);
    return MapSpec{make_affine_map(n1, d1, n2, d2)};
  }

  if (t.rfind("MON:", 0) == 0) {
    const std::size_t colon = t.find(':', 4);
    if (colon == std::string::npos) syntax("expected ':' after the dimension", t.size(), text);
    int d = 0;
    try {
      d = std::stoi(t.substr(4, colon - 4));
    } catch (const std::exception&) {
      syntax("bad dimension", lead + 4, text);
    }
    IntMatrix m;
    try {
      m = nlohmann::json::parse(t.substr(colon + 1)).get<IntMatrix>();
    } catch (const nlohmann::json::exception&) {
      syntax("expected an integer matrix [[...], ...]", lead + colon + 1, text);
    }
    if (static_cast<int>(m.size()) != d) {
      throw Error(ErrorCode::kArity, "expected " + std::to_string(d) + " rows, got " + std::to_string(m.size()));
    }
    for (const auto& row : m) {
      if (static_cast<int>(row.size()) != d) {
        throw Error(ErrorCode::kArity, "expected " + std::to_string(d) + " entries per row");
      }
    }
    const long long det = int_determinant(m);
    if (det != 1 && det != -1) {
      throw Error(ErrorCode::kPrecondition, "monomial matrix has determinant " + std::to_string(det) + ", not +-1");
    }
    return MapSpec{MonomialMap{m}};
  }

  if (builtin_map(t)) return MapSpec{BuiltinRef{t}};
  std::string known;
  for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
  syntax("unknown map '" + t + "' (expected P2:[...], A2:(...), MON:d:[[...]] or one of " + known + ")", lead,
         text);
}

std::string map_spec_to_string(const MapSpec& s) {
  if (const auto* p = std::get_if<PolyTuple>(&s.form)) {
    std::string out = "P" + std::to_string(p->size() - 1) + ":[";
    for (std::size_t i = 0; i < p->size(); ++i) out += (i ? " : " : "") + (*p)[i].to_string();
    return out + "]";
  }
  if (const auto* a = std::get_if<AffineMap2>(&s.form)) {
    return "A2:(" + fraction_to_string(a->num[0], a->den[0]) + ", " + fraction_to_string(a->num[1], a->den[1]) +
           ")";
  }
  if (const auto* m = std::get_if<MonomialMap>(&s.form)) {
    return "MON:" + std::to_string(m->matrix.size()) + ":" + nlohmann::json(m->matrix).dump();
  }
  return std::get<BuiltinRef>(s.form).name;
}

ProjMap map_from_spec(const MapSpec& s) {
  ProjMap f = [&] {
    if (const auto* p = std::get_if<PolyTuple>(&s.form)) return ProjMap(*p);
    if (const auto* a = std::get_if<AffineMap2>(&s.form)) return homogenize(*a);
    if (const auto* m = std::get_if<MonomialMap>(&s.form)) return monomial_map(*m);
    return *builtin_map(std::get<BuiltinRef>(s.form).name);
  }();
  if (f.has_inverse()) return f;
  try {
    return with_inverse(f);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInverseUnavailable) throw;
    return f;
  }
}

}  // namespace cremona
