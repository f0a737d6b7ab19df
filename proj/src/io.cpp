#include "gf/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace gf::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<cplx> complex_list(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<cplx> out;
  for (const auto& x : j) out.push_back(parse_complex(x));
  return out;
}

std::string type_of(const json& j) {
  const json& t = field(j, "type");
  if (!t.is_string()) bad("'type' must be a string");
  return t.get<std::string>();
}

json complex_array(const std::vector<cplx>& v) {
  json a = json::array();
  for (const cplx z : v) a.push_back(to_json(z));
  return a;
}

void dump_rec(std::ostringstream& os, const json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        os << json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        dump_rec(os, it.value(), indent, depth + 1);
      }
      newline(depth);
      os << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // short numeric arrays ([re, im] pairs) stay on one line
      bool flat = j.size() <= 2;
      for (const auto& x : j) flat = flat && x.is_primitive();
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << (flat && indent >= 0 ? ", " : ",");
        if (!flat) newline(depth + 1);
        dump_rec(os, j[i], indent, depth + 1);
      }
      if (!flat) newline(depth);
      os << ']';
      return;
    }
    case json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

cplx parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  bad("complex number must be [re, im] or a number, got " + j.dump());
}

ExtPoint parse_point(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "∞") return ExtPoint::infinity();
    bad("unknown point '" + s + "'");
  }
  return parse_complex(j);
}

CurveSpec parse_curve(const json& j) {
  const std::string t = type_of(j);
  if (t == "circle") return Circle{parse_complex(field(j, "center")), number(field(j, "radius"), "radius")};
  if (t == "ellipse") {
    const json& ax = field(j, "semi_axes");
    if (!ax.is_array() || ax.size() != 2) bad("semi_axes must be [a, b]");
    return Ellipse{parse_complex(field(j, "center")), number(ax[0], "semi axis"), number(ax[1], "semi axis")};
  }
  if (t == "fourier") {
    FourierCurve f;
    f.kmin = integer(field(j, "kmin"), "kmin");
    f.coeffs = complex_list(field(j, "coeffs"), "coeffs");
    if (j.contains("counterclockwise")) {
      if (!j["counterclockwise"].is_boolean()) bad("counterclockwise must be a boolean");
      f.counterclockwise = j["counterclockwise"].get<bool>();
    }
    return f;
  }
  bad("unknown curve type '" + t + "'");
}

ArcSpec parse_arc(const json& j) {
  const std::string t = type_of(j);
  if (t == "segment") return Segment{parse_complex(field(j, "A")), parse_complex(field(j, "B"))};
  if (t == "cheb_graph") {
    ChebGraph g{parse_complex(field(j, "A")), parse_complex(field(j, "B")), {}};
    const json& off = field(j, "offset");
    if (!off.is_array()) bad("offset must be an array");
    for (const auto& x : off) g.offset.push_back(number(x, "offset"));
    return g;
  }
  if (t == "chebyshev") return ChebyshevArc{complex_list(field(j, "coeffs"), "coeffs")};
  bad("unknown arc type '" + t + "'");
}

DomainSpec parse_domain(const json& j) {
  const std::string t = type_of(j);
  if (t == "segment" || t == "cheb_graph" || t == "chebyshev") return parse_arc(j);
  return parse_curve(j);
}

PoleSet parse_poles(const json& j) {
  if (!j.is_array()) bad("poles must be an array of {at, order}");
  std::vector<Pole> poles;
  for (const auto& p : j) {
    Pole q;
    q.at = parse_point(field(p, "at"));
    q.order = p.contains("order") ? integer(p["order"], "order") : 1;
    poles.push_back(q);
  }
  return PoleSet::make(poles);
}

RationalFn parse_rational(const json& j) {
  if (!j.is_object()) bad("rational must be an object");
  OuterPoly outer;
  if (j.contains("outer")) {
    const json& o = j["outer"];
    if (o.contains("basis")) {
      const auto b = o["basis"].get<std::string>();
      if (b == "monomial")
        outer.basis = OuterPoly::Basis::Monomial;
      else if (b == "chebyshev")
        outer.basis = OuterPoly::Basis::Chebyshev;
      else
        bad("unknown basis '" + b + "'");
    }
    if (o.contains("center")) outer.center = parse_complex(o["center"]);
    if (o.contains("half")) outer.half = parse_complex(o["half"]);
    outer.coeffs = complex_list(field(o, "coeffs"), "outer coeffs");
  }
  std::vector<PrincipalPart> parts;
  if (j.contains("parts")) {
    if (!j["parts"].is_array()) bad("parts must be an array");
    for (const auto& p : j["parts"])
      parts.push_back({parse_complex(field(p, "pole")), complex_list(field(p, "coeffs"), "part coeffs")});
  }
  RationalFn r = make_rational(outer, parts);
  if (j.contains("product")) {
    const json& q = j["product"];
    ProductForm pf;
    if (q.contains("scale")) pf.scale = parse_complex(q["scale"]);
    if (q.contains("zeros")) pf.zeros = complex_list(q["zeros"], "product zeros");
    if (q.contains("poles")) pf.poles = complex_list(q["poles"], "product poles");
    r = with_product_form(std::move(r), std::move(pf));
  }
  return r;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const ExtPoint& p) { return p.is_infinite() ? json("inf") : to_json(p.value()); }

json to_json(const CurveSpec& c) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return {{"type", "circle"}, {"center", to_json(s.center)}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return {{"type", "ellipse"}, {"center", to_json(s.center)}, {"semi_axes", {s.semi_x, s.semi_y}}};
        } else {
          return {{"type", "fourier"}, {"kmin", s.kmin}, {"coeffs", complex_array(s.coeffs)},
                  {"counterclockwise", s.counterclockwise}};
        }
      },
      c);
}

json to_json(const ArcSpec& a) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Segment>) {
          return {{"type", "segment"}, {"A", to_json(s.a)}, {"B", to_json(s.b)}};
        } else if constexpr (std::is_same_v<T, ChebGraph>) {
          return {{"type", "cheb_graph"}, {"A", to_json(s.a)}, {"B", to_json(s.b)}, {"offset", s.offset}};
        } else {
          return {{"type", "chebyshev"}, {"coeffs", complex_array(s.coeffs)}};
        }
      },
      a);
}

json to_json(const DomainSpec& d) {
  return std::visit([](const auto& s) { return to_json(s); }, d);
}

json to_json(const PoleSet& p) {
  json a = json::array();
  for (const auto& q : p.poles()) a.push_back({{"at", to_json(q.at)}, {"order", q.order}});
  return a;
}

json to_json(const RationalFn& r) {
  const auto& o = r.outer();
  json parts = json::array();
  for (const auto& p : r.parts()) parts.push_back({{"pole", to_json(p.pole)}, {"coeffs", complex_array(p.coeffs)}});
  json j = {{"outer",
           {{"basis", o.basis == OuterPoly::Basis::Monomial ? "monomial" : "chebyshev"},
            {"center", to_json(o.center)},
            {"half", to_json(o.half)},
            {"coeffs", complex_array(o.coeffs)}}},
          {"parts", parts}};
  if (const auto* pf = r.product_form())
    j["product"] = {{"scale", to_json(pf->scale)}, {"zeros", complex_array(pf->zeros)}, {"poles", complex_array(pf->poles)}};
  return j;
}

json to_json(const FactorReport& r) {
  json parts = json::array();
  for (const auto& p : r.parts) {
    json q = {{"pole", to_json(p.pole)}, {"order", p.order}, {"side", std::string(to_string(p.side))},
              {"density", p.density}};
    if (!p.endpoint.empty()) q["endpoint"] = p.endpoint;
    parts.push_back(q);
  }
  json j = {{"kind", r.kind}, {"z0", to_json(r.z0)}, {"t", r.t}, {"k", r.k}};
  if (!r.endpoint.empty()) {
    j["endpoint"] = r.endpoint;
    j["omega_A"] = r.omega_a;
    j["omega_B"] = r.omega_b;
    j["omega_sum"] = r.omega_sum;
  } else {
    j["S_plus"] = r.s_plus;
    j["S_minus"] = r.s_minus;
  }
  j["factor"] = r.factor;
  j["parts"] = parts;
  j["nq"] = r.nq;
  j["accuracy"] = r.accuracy;
  return j;
}

json to_json(const OmegaValue& w) {
  json j = {{"endpoint", w.endpoint == Endpoint::A ? "A" : "B"}, {"pole", to_json(w.pole)}, {"omega", w.value},
            {"method", w.method}};
  if (w.cross_check != 0.0) j["cross_check"] = w.cross_check;
  return j;
}

json to_json(const ExtremalMember& m) {
  json j = {{"family", m.family}, {"requested_n", m.requested_n}, {"degree", m.degree}, {"slack", m.slack},
            {"z0", to_json(m.z0)}};
  if (m.family == "mobius_power") j["jacobian"] = m.jacobian;
  if (m.family == "symmetrized_markov") j["conditioning"] = m.conditioning;
  j["rational"] = to_json(m.fn);
  return j;
}

json load_json_arg(const std::string& text_or_path) {
  std::string text = text_or_path;
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool inline_json = first != std::string::npos && std::string("{[\"").find(text[first]) != std::string::npos;
  if (!inline_json) {
    std::ifstream in(text_or_path);
    if (!in) bad("cannot read '" + text_or_path + "' (not inline JSON, not a readable file)");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

std::string format_double(double x) {
  if (std::isnan(x) || std::isinf(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  // keep it a float on re-read
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string dump(const json& j, int indent) {
  std::ostringstream os;
  dump_rec(os, j, indent, 0);
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) bad("cannot write '" + path.string() + "'");
  out << text;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  std::ostringstream os;
  os << "# generated " << stamp << '\n';
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  write_text(path, os.str());
}

}  // namespace gf::io
