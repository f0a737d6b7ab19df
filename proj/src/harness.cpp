#include "gf/harness.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <thread>

#include "gf/extremal.hpp"

namespace gf {

namespace {

using io::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

const json& need(const json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("config is missing '") + key + "'");
  return j.at(key);
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad(std::string("config field '") + key + "' has the wrong type");
  }
}

/// [1, 2, 3] or {"from": 1, "to": 20, "step": 1}; must increase strictly.
std::vector<int> int_list(const json& j, const char* what) {
  std::vector<int> v;
  if (j.is_number_integer()) {
    v.push_back(j.get<int>());
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (!x.is_number_integer()) bad(std::string(what) + " entries must be integers");
      v.push_back(x.get<int>());
    }
  } else if (j.is_object()) {
    const int from = need(j, "from").get<int>(), to = need(j, "to").get<int>();
    const int step = get_or(j, "step", 1);
    if (step < 1) bad(std::string(what) + " step must be positive");
    for (int n = from; n <= to; n += step) v.push_back(n);
  } else {
    bad(std::string(what) + " must be an integer, a list or {from, to}");
  }
  if (v.empty()) bad(std::string(what) + " is empty");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) bad(std::string(what) + " must be strictly increasing");
  return v;
}

std::vector<Target> target_list(const json& j) {
  std::vector<Target> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(parse_target(x));
  } else {
    out.push_back(parse_target(j));
  }
  return out;
}

std::vector<json> run_pool(const std::vector<std::function<json()>>& tasks, unsigned threads) {
  std::vector<json> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "row " + std::to_string(i) + ": " + e.what());
    }
  }
  return results;
}

double boundary_distance(const Domain& d, cplx z) {
  return std::visit(
      [z](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Curve>)
          return x.distance(z);
        else
          return x.arc().distance(z);
      },
      d);
}

double domain_diameter(const Domain& d) {
  return std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Curve>)
          return x.diameter();
        else
          return x.arc().diameter();
      },
      d);
}

// uniform draw from one of the regions, picked with probability proportional to area
struct Region {
  enum class Kind { Annulus, Rectangle } kind;
  cplx center{};
  double r0 = 0.0, r1 = 1.0;
  cplx lo{}, hi{};
  double area() const {
    return kind == Kind::Annulus ? pi * (r1 * r1 - r0 * r0) : (hi.real() - lo.real()) * (hi.imag() - lo.imag());
  }
};

Region parse_region(const json& j) {
  const auto type = need(j, "type").get<std::string>();
  Region r{};
  if (type == "annulus" || type == "disk") {
    r.kind = Region::Kind::Annulus;
    r.center = j.contains("center") ? io::parse_complex(j["center"]) : cplx{};
    if (type == "disk") {
      r.r1 = need(j, "radius").get<double>();
    } else {
      const json& rr = need(j, "radii");
      r.r0 = rr.at(0).get<double>();
      r.r1 = rr.at(1).get<double>();
    }
    if (!(r.r0 >= 0.0 && r.r1 > r.r0)) bad("region radii must satisfy 0 <= r0 < r1");
  } else if (type == "rectangle") {
    r.kind = Region::Kind::Rectangle;
    r.lo = io::parse_complex(need(j, "min"));
    r.hi = io::parse_complex(need(j, "max"));
    if (!(r.hi.real() > r.lo.real() && r.hi.imag() > r.lo.imag())) bad("rectangle needs min < max");
  } else {
    bad("unknown region type '" + type + "'");
  }
  return r;
}

cplx draw(const std::vector<Region>& regions, std::mt19937_64& rng) {
  std::vector<double> w;
  for (const auto& r : regions) w.push_back(r.area());
  const Region& r = regions[std::discrete_distribution<std::size_t>(w.begin(), w.end())(rng)];
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (r.kind == Region::Kind::Rectangle)
    return {r.lo.real() + u(rng) * (r.hi.real() - r.lo.real()), r.lo.imag() + u(rng) * (r.hi.imag() - r.lo.imag())};
  const double rad = std::sqrt(r.r0 * r.r0 + u(rng) * (r.r1 * r.r1 - r.r0 * r.r0));
  return r.center + std::polar(rad, two_pi * u(rng));
}

cplx gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  return {re, g(rng)};
}

// split n into m positive parts
std::vector<int> composition(int n, int m, std::mt19937_64& rng) {
  std::vector<int> cuts;
  std::vector<int> pool(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n - 1; ++i) pool[i] = i + 1;
  std::shuffle(pool.begin(), pool.end(), rng);
  cuts.assign(pool.begin(), pool.begin() + (m - 1));
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> parts;
  int prev = 0;
  for (int c : cuts) {
    parts.push_back(c - prev);
    prev = c;
  }
  parts.push_back(n - prev);
  return parts;
}

std::vector<std::string> flatten_keys(const json& row, const std::string& prefix = "") {
  std::vector<std::string> keys;
  for (auto it = row.begin(); it != row.end(); ++it) {
    const auto& v = it.value();
    const std::string key = prefix + it.key();
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      keys.push_back(key + "_re");
      keys.push_back(key + "_im");
    } else if (v.is_primitive()) {
      keys.push_back(key);
    }
  }
  return keys;
}

std::string cell(const json& v) {
  if (v.is_number_float()) return io::format_double(v.get<double>());
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s.find_first_of(",\"") != std::string::npos) {
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    }
    return s;
  }
  if (v.is_null()) return "";
  return v.dump();
}

std::string cell_for(const json& row, const std::string& key) {
  if (row.contains(key)) return row[key].is_primitive() ? cell(row[key]) : std::string();
  const auto us = key.rfind('_');
  if (us != std::string::npos) {
    const auto base = key.substr(0, us), part = key.substr(us + 1);
    if (row.contains(base) && row[base].is_array() && row[base].size() == 2)
      return cell(row[base][part == "re" ? 0 : 1]);
  }
  return "";
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return 0.0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  return sxx > 0 ? sxy / sxx : 0.0;
}

struct Common {
  VerifyOptions verify;
  GreenOptions green;
  unsigned threads = 1;
  std::uint64_t seed = 0;
};

Common common_options(const json& c) {
  Common o;
  o.green.nq = get_or<std::size_t>(c, "nq", 512);
  o.verify.factor.green = o.green;
  o.verify.samples = get_or<std::size_t>(c, "samples", 4096);
  o.verify.tolerance = get_or(c, "tolerance", 5e-2);
  o.seed = get_or<std::uint64_t>(c, "seed", 0);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  o.threads = get_or(c, "threads", hw);
  return o;
}

json member_fields(const ExtremalMember& m) {
  json j = {{"family", m.family}, {"requested_n", m.requested_n}, {"degree", m.degree}, {"slack", m.slack}};
  if (m.family == "mobius_power") j["jacobian"] = m.jacobian;
  if (m.family == "symmetrized_markov") j["conditioning"] = m.conditioning;
  return j;
}

json merge(json a, const json& b) {
  for (auto it = b.begin(); it != b.end(); ++it) a[it.key()] = it.value();
  return a;
}

// ---- experiment kinds ----

std::vector<std::function<json()>> factor_tasks(const json& c, const Common& o) {
  const auto spec = io::parse_domain(need(c, "domain"));
  const auto domain = std::make_shared<Domain>(make_domain(spec, o.green));
  const PoleSet poles = io::parse_poles(need(c, "poles"));
  const auto ks = int_list(c.contains("k") ? c["k"] : json(1), "k");
  std::vector<std::function<json()>> tasks;
  for (const Target& at : target_list(need(c, "at")))
    for (int k : ks)
      tasks.push_back([=] {
        FactorReport r;
        if (const auto* curve = std::get_if<Curve>(domain.get())) {
          if (at.kind == Target::Kind::Param)
            r = bernstein_factor_curve(*curve, poles, at.t, o.verify.factor);
          else if (at.kind == Target::Kind::Point)
            r = bernstein_factor_curve_at(*curve, poles, at.z, o.verify.factor);
          else
            bad("endpoint targets need an arc");
          r.k = k;
          r.factor = std::pow(r.factor, k);
        } else {
          const auto& ou = std::get<OpenUp>(*domain);
          switch (at.kind) {
            case Target::Kind::Param:
              r = bernstein_factor_arc(ou, poles, at.t, k);
              break;
            case Target::Kind::Point:
              r = bernstein_factor_arc(ou, poles, ou.arc().nearest(at.z).t, k);
              break;
            case Target::Kind::A:
              r = markov_factor(ou, poles, MarkovEndpoint::A, k);
              break;
            case Target::Kind::B:
              r = markov_factor(ou, poles, MarkovEndpoint::B, k);
              break;
            case Target::Kind::Global:
              r = markov_factor(ou, poles, MarkovEndpoint::Global, k);
              break;
          }
        }
        json row = {{"at", to_string(at)}};
        return merge(row, io::to_json(r));
      });
  return tasks;
}

std::vector<std::function<json()>> omega_tasks(const json& c, const Common& o) {
  const Arc arc = Arc::make(io::parse_arc(need(c, "arc")));
  OpenUpOptions oo;
  oo.green = o.green;
  const auto ou = std::make_shared<OpenUp>(OpenUp::make(arc, oo));
  const bool cross = get_or(c, "cross_check", false);
  const bool sym = get_or(c, "symmetrized", false);
  std::shared_ptr<OpenUp> star;
  if (sym) star = std::make_shared<OpenUp>(OpenUp::make(symmetrize(arc), oo));
  std::vector<Endpoint> ends;
  const auto e = get_or<std::string>(c, "endpoint", "both");
  if (e == "A" || e == "both") ends.push_back(Endpoint::A);
  if (e == "B" || e == "both") ends.push_back(Endpoint::B);
  if (ends.empty()) bad("endpoint must be A, B or both");
  if (sym && (ends.size() != 1 || ends[0] != Endpoint::A)) bad("symmetrized rows need endpoint A");
  std::vector<std::function<json()>> tasks;
  for (const auto& pj : need(c, "poles")) {
    const ExtPoint a = io::parse_point(pj);
    for (Endpoint end : ends)
      tasks.push_back([=] {
        const OmegaValue w = omega(*ou, end, a, cross);
        json row = io::to_json(w);
        if (sym) {
          // density of the symmetrized arc at its midpoint 0
          for (Side side : {Side::Plus, Side::Minus}) {
            double d;
            if (a.is_infinite()) {
              d = arc_normal_density(*star, 0.0, a, side);
            } else {
              const cplx r = std::sqrt(a.value());
              d = 0.5 * (arc_normal_density(*star, 0.0, r, side) + arc_normal_density(*star, 0.0, -r, side));
            }
            row[side == Side::Plus ? "symmetrized_plus" : "symmetrized_minus"] = d;
          }
          row["symmetrized_error"] =
              std::max(std::abs(row["symmetrized_plus"].get<double>() - w.value),
                       std::abs(row["symmetrized_minus"].get<double>() - w.value));
        }
        return row;
      });
  }
  return tasks;
}

std::vector<std::function<json()>> verify_tasks(const json& c, const Common& o) {
  const auto domain = std::make_shared<Domain>(make_domain(io::parse_domain(need(c, "domain")), o.green));
  const auto ks = int_list(c.contains("k") ? c["k"] : json(1), "k");
  std::vector<std::function<json()>> tasks;
  std::size_t idx = 0;
  for (const auto& rj : need(c, "rationals")) {
    const RationalFn r = io::parse_rational(rj);
    for (const Target& at : target_list(need(c, "at")))
      for (int k : ks)
        tasks.push_back([=] {
          json row = {{"index", idx}};
          return merge(row, to_json(verify_inequality(r, *domain, at, k, o.verify)));
        });
    ++idx;
  }
  return tasks;
}

std::vector<std::function<json()>> random_tasks(const json& c, const Common& o) {
  const auto domain = std::make_shared<Domain>(make_domain(io::parse_domain(need(c, "domain")), o.green));
  std::vector<Region> regions;
  for (const auto& r : need(c, "regions")) regions.push_back(parse_region(r));
  if (regions.empty()) bad("regions is empty");
  const int count = need(c, "count").get<int>();
  const int max_degree = get_or(c, "max_degree", 60);
  const int min_degree = get_or(c, "min_degree", 1);
  const int max_poles = get_or(c, "max_poles", 4);
  const bool with_inf = get_or(c, "infinity", true);
  const int n_targets = get_or(c, "targets", 4);
  const double margin = get_or(c, "margin", 1e-8) * domain_diameter(*domain);
  const auto ks = int_list(c.contains("k") ? c["k"] : json(1), "k");
  if (count < 1 || max_poles < 1 || min_degree < 1 || max_degree < min_degree) bad("bad random_rational sizes");
  const bool is_arc = std::holds_alternative<OpenUp>(*domain);
  cplx center{};
  double radius = 0.5 * domain_diameter(*domain);
  if (is_arc) {
    const auto& arc = std::get<OpenUp>(*domain).arc();
    center = 0.5 * (arc.a() + arc.b());
  } else {
    center = std::get<Curve>(*domain).interior_point();
  }

  std::mt19937_64 rng(o.seed);
  std::vector<std::function<json()>> tasks;
  for (int f = 0; f < count; ++f) {
    const int n = std::uniform_int_distribution<int>(min_degree, max_degree)(rng);
    const int slots = std::uniform_int_distribution<int>(1, std::min(n, max_poles + (with_inf ? 1 : 0)))(rng);
    const auto orders = composition(n, slots, rng);
    const bool use_inf = with_inf && slots > 1 && std::bernoulli_distribution(0.5)(rng);
    OuterPoly outer{OuterPoly::Basis::Monomial, center, radius, {gaussian(rng)}};
    std::vector<PrincipalPart> parts;
    for (int s = 0; s < slots; ++s) {
      const int m = orders[s];
      if (use_inf && s == 0) {
        outer.coeffs.resize(static_cast<std::size_t>(m) + 1);
        for (int j = 1; j <= m; ++j) outer.coeffs[j] = gaussian(rng);
        continue;
      }
      cplx a;
      for (int tries = 0;; ++tries) {
        if (tries > 10000) bad("cannot place poles in the regions away from the boundary");
        a = draw(regions, rng);
        bool ok = boundary_distance(*domain, a) > margin;
        for (const auto& p : parts) ok = ok && std::abs(p.pole - a) > margin;
        if (ok) break;
      }
      // scale so each term is O(1) near the boundary
      const double rho = boundary_distance(*domain, a);
      PrincipalPart p{a, std::vector<cplx>(static_cast<std::size_t>(m) + 1, cplx{})};
      for (int j = 1; j <= m; ++j) p.coeffs[j] = gaussian(rng) * std::pow(rho, j);
      parts.push_back(std::move(p));
    }
    const RationalFn r = make_rational(outer, parts);
    std::vector<Target> targets;
    std::uniform_real_distribution<double> ut(is_arc ? -0.95 : 0.0, is_arc ? 0.95 : two_pi);
    for (int i = 0; i < n_targets; ++i) targets.push_back(Target{Target::Kind::Param, ut(rng), {}});
    if (is_arc && get_or(c, "endpoints", false)) {
      targets.push_back(Target{Target::Kind::A, -1.0, {}});
      targets.push_back(Target{Target::Kind::B, 1.0, {}});
    }
    for (const Target& at : targets)
      for (int k : ks)
        tasks.push_back([=] {
          json row = {{"index", f}, {"n", r.degree()}, {"poles", io::to_json(r.pole_set())}};
          return merge(row, to_json(verify_inequality(r, *domain, at, k, o.verify)));
        });
  }
  return tasks;
}

std::vector<std::function<json()>> blaschke_tasks(const json& c, const Common& o) {
  const double tol = get_or(c, "equality_tolerance", 1e-9);
  const auto circle = std::make_shared<Domain>(Curve::make(Circle{0.0, 1.0}));
  std::vector<std::pair<json, std::vector<cplx>>> sets;
  if (c.contains("random")) {
    const json& rj = c["random"];
    const int count = need(rj, "count").get<int>();
    const int max_size = get_or(rj, "max_size", 20);
    const auto in = get_or(rj, "inside", std::vector<double>{0.1, 0.9});
    const auto out = get_or(rj, "outside", std::vector<double>{1.1, 10.0});
    if (in.size() != 2 || out.size() != 2 || !(in[1] < 1.0) || !(out[0] > 1.0)) bad("bad Blaschke radius ranges");
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int s = 0; s < count; ++s) {
      const int size = std::uniform_int_distribution<int>(1, max_size)(rng);
      const bool inside = std::bernoulli_distribution(0.5)(rng);
      const auto& rr = inside ? in : out;
      std::vector<cplx> poles;
      for (int i = 0; i < size; ++i)
        poles.push_back(std::polar(rr[0] + u(rng) * (rr[1] - rr[0]), two_pi * u(rng)));
      sets.push_back({json{{"set", s}, {"size", size}, {"side", inside ? "inside" : "outside"}}, poles});
    }
  } else {
    std::vector<cplx> base;
    for (const auto& p : need(c, "poles")) base.push_back(io::parse_complex(p));
    for (int n : int_list(need(c, "n"), "n")) {
      std::vector<cplx> poles;
      for (int i = 0; i < n; ++i) poles.insert(poles.end(), base.begin(), base.end());
      sets.push_back({json{{"n", n}}, poles});
    }
  }
  std::vector<std::function<json()>> tasks;
  for (const auto& [head, poles] : sets)
    tasks.push_back([=] {
      const ExtremalMember m = extremal_blaschke(poles);
      VerifyRow row = verify_inequality(m.fn, *circle, Target{Target::Kind::Param, 0.0, {}}, 1, o.verify);
      row.violation = row.violation || std::abs(row.ratio - 1.0) > tol;
      return merge(merge(head, member_fields(m)), to_json(row));
    });
  return tasks;
}

std::vector<std::function<json()>> markov_tasks(const json& c, const Common& o) {
  const Arc seg = Arc::make(io::parse_arc(need(c, "domain")));
  const auto domain = std::make_shared<Domain>(make_domain(seg.spec(), o.green));
  const PoleSet base = io::parse_poles(need(c, "poles"));
  const auto e = get_or<std::string>(c, "endpoint", "A");
  if (e != "A" && e != "B") bad("endpoint must be A or B");
  const Endpoint end = e == "A" ? Endpoint::A : Endpoint::B;
  const auto ks = int_list(c.contains("k") ? c["k"] : json(1), "k");
  std::vector<std::function<json()>> tasks;
  for (int n : int_list(need(c, "n"), "n"))
    for (int k : ks)
      tasks.push_back([=] {
        const ExtremalMember m = markov_extremal(seg, base.scaled(n), end);
        const Target at{end == Endpoint::A ? Target::Kind::A : Target::Kind::B, end == Endpoint::A ? -1.0 : 1.0, {}};
        json row = {{"n", n}};
        return merge(merge(row, member_fields(m)), to_json(verify_inequality(m.fn, *domain, at, k, o.verify)));
      });
  return tasks;
}

std::vector<std::function<json()>> lemniscate_tasks(const json& c, const Common& o) {
  const auto domain = std::make_shared<Domain>(make_domain(io::parse_domain(need(c, "domain")), o.green));
  const RationalFn t = io::parse_rational(need(c, "base"));
  const cplx z0 = io::parse_complex(need(c, "z0"));
  std::vector<std::function<json()>> tasks;
  for (int n : int_list(need(c, "n"), "n"))
    tasks.push_back([=] {
      const ExtremalMember m = lemniscate_power(t, z0, n);
      json row = {{"n", n}};
      return merge(merge(row, member_fields(m)),
                   to_json(verify_inequality(m.fn, *domain, Target{Target::Kind::Point, 0.0, z0}, 1, o.verify)));
    });
  return tasks;
}

std::vector<std::function<json()>> mobius_tasks(const json& c, const Common& o) {
  const auto spec = io::parse_curve(need(c, "domain"));
  const auto* circle = std::get_if<Circle>(&spec);
  if (!circle) throw Error(ErrorCode::UnsupportedCurve, "mobius_power needs a circle");
  const Circle cir = *circle;
  const auto domain = std::make_shared<Domain>(Curve::make(cir));
  const ExtPoint a = io::parse_point(need(c, "pole"));
  const cplx z0 = io::parse_complex(need(c, "z0"));
  std::vector<std::function<json()>> tasks;
  for (int n : int_list(need(c, "n"), "n"))
    tasks.push_back([=] {
      const ExtremalMember m = mobius_power(cir, a, z0, n);
      json row = {{"n", n}};
      return merge(merge(row, member_fields(m)),
                   to_json(verify_inequality(m.fn, *domain, Target{Target::Kind::Point, 0.0, z0}, 1, o.verify)));
    });
  return tasks;
}

}  // namespace

Domain make_domain(const io::DomainSpec& spec, const GreenOptions& green) {
  if (const auto* c = std::get_if<CurveSpec>(&spec)) return Curve::make(*c);
  OpenUpOptions oo;
  oo.green = green;
  return OpenUp::make(Arc::make(std::get<ArcSpec>(spec)), oo);
}

Boundary boundary_of(const Domain& d) {
  if (const auto* c = std::get_if<Curve>(&d)) return *c;
  return std::get<OpenUp>(d).arc();
}

Target parse_target(const std::string& s) {
  if (s == "A") return {Target::Kind::A, -1.0, {}};
  if (s == "B") return {Target::Kind::B, 1.0, {}};
  if (s == "global") return {Target::Kind::Global, 0.0, {}};
  std::string body = s;
  body.erase(std::remove_if(body.begin(), body.end(), [](char ch) { return ch == '[' || ch == ']' || ch == ' '; }),
             body.end());
  const auto comma = body.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double t = std::stod(body, &used);
      if (used == body.size()) return {Target::Kind::Param, t, {}};
    } else {
      const double x = std::stod(body.substr(0, comma), &used);
      std::size_t used2 = 0;
      const std::string rest = body.substr(comma + 1);
      const double y = std::stod(rest, &used2);
      if (used == comma && used2 == rest.size()) return {Target::Kind::Point, 0.0, {x, y}};
    }
  } catch (const std::exception&) {
  }
  bad("cannot read target '" + s + "' (expected t, x,y, A, B or global)");
}

Target parse_target(const io::json& j) {
  if (j.is_string()) return parse_target(j.get<std::string>());
  if (j.is_number()) return {Target::Kind::Param, j.get<double>(), {}};
  return {Target::Kind::Point, 0.0, io::parse_complex(j)};
}

std::string to_string(const Target& t) {
  switch (t.kind) {
    case Target::Kind::A:
      return "A";
    case Target::Kind::B:
      return "B";
    case Target::Kind::Global:
      return "global";
    case Target::Kind::Param:
      return "t=" + io::format_double(t.t);
    case Target::Kind::Point:
      return "z=" + io::format_double(t.z.real()) + (t.z.imag() < 0 ? "" : "+") + io::format_double(t.z.imag()) + "i";
  }
  return {};
}

VerifyRow verify_inequality(const RationalFn& r, const Domain& domain, const Target& at, int k,
                            const VerifyOptions& opts) {
  if (k < 1) bad("derivative order must be >= 1");
  VerifyRow row;
  row.degree = r.degree();
  row.at = to_string(at);
  row.k = k;
  const PoleSet poles = r.pole_set();
  if (poles.poles().empty()) bad("constant functions have no inequality to verify");
  row.norm = sup_norm(r, boundary_of(domain), opts.samples).value;
  if (!(row.norm > 0.0)) bad("the rational function vanishes on the boundary");

  if (const auto* curve = std::get_if<Curve>(&domain)) {
    double t = at.t;
    if (at.kind == Target::Kind::Point) {
      const auto np = curve->nearest(at.z);
      if (np.distance > 1e-9 * curve->diameter()) bad("target point is not on the curve");
      t = np.t;
    } else if (at.kind != Target::Kind::Param) {
      bad("endpoint targets need an arc");
    }
    const FactorReport f = bernstein_factor_curve(*curve, poles, t, opts.factor);
    row.t = t;
    row.z0 = f.z0;
    row.factor = std::pow(f.factor, k);
    row.deriv = std::abs(r.eval_deriv(f.z0, k));
  } else {
    const OpenUp& ou = std::get<OpenUp>(domain);
    const Arc& arc = ou.arc();
    switch (at.kind) {
      case Target::Kind::Param:
      case Target::Kind::Point: {
        double t = at.t;
        if (at.kind == Target::Kind::Point) {
          const auto np = arc.nearest(at.z);
          if (np.distance > 1e-9 * arc.diameter()) bad("target point is not on the arc");
          t = np.t;
        }
        const FactorReport f = bernstein_factor_arc(ou, poles, t, k);
        row.t = t;
        row.z0 = f.z0;
        row.factor = f.factor;
        row.deriv = std::abs(r.eval_deriv(f.z0, k));
        break;
      }
      case Target::Kind::A:
      case Target::Kind::B: {
        const bool is_a = at.kind == Target::Kind::A;
        const FactorReport f = markov_factor(ou, poles, is_a ? MarkovEndpoint::A : MarkovEndpoint::B, k);
        row.t = is_a ? -1.0 : 1.0;
        row.z0 = f.z0;
        row.factor = f.factor;
        row.deriv = std::abs(r.eval_deriv(f.z0, k));
        break;
      }
      case Target::Kind::Global: {
        const FactorReport f = markov_factor(ou, poles, MarkovEndpoint::Global, k);
        row.factor = f.factor;
        // max of |R^(k)| over the arc, endpoints included
        const std::size_t n = opts.samples;
        for (std::size_t i = 0; i <= n; ++i) {
          const double t = -std::cos(pi * static_cast<double>(i) / static_cast<double>(n));
          const double v = std::abs(r.eval_deriv(arc.point(t), k));
          if (v > row.deriv) {
            row.deriv = v;
            row.t = t;
          }
        }
        row.z0 = arc.point(row.t);
        break;
      }
    }
  }
  row.ratio = row.deriv / (row.norm * row.factor);
  row.violation = row.ratio > 1.0 + opts.tolerance;
  return row;
}

io::json to_json(const VerifyRow& row) {
  return {{"degree", row.degree}, {"at", row.at},         {"z0", io::to_json(row.z0)}, {"t", row.t},
          {"k", row.k},           {"deriv", row.deriv},   {"norm", row.norm},          {"factor", row.factor},
          {"ratio", row.ratio},   {"violation", row.violation}};
}

io::json Report::to_json() const {
  return {{"config_echo", config_echo}, {"rows", rows}, {"summary", summary}, {"versions", versions}};
}

io::json versions() {
  return {{"gf", "0.1.0"},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"compiler", __VERSION__}};
}

Report run_experiment(const io::json& config) {
  if (!config.is_object()) bad("config must be an object");
  const auto kind = need(config, "kind").get<std::string>();
  const Common o = common_options(config);
  std::vector<std::function<json()>> tasks;
  if (kind == "factor")
    tasks = factor_tasks(config, o);
  else if (kind == "omega")
    tasks = omega_tasks(config, o);
  else if (kind == "verify")
    tasks = verify_tasks(config, o);
  else if (kind == "random_rational")
    tasks = random_tasks(config, o);
  else if (kind == "blaschke")
    tasks = blaschke_tasks(config, o);
  else if (kind == "markov")
    tasks = markov_tasks(config, o);
  else if (kind == "lemniscate")
    tasks = lemniscate_tasks(config, o);
  else if (kind == "mobius")
    tasks = mobius_tasks(config, o);
  else
    bad("unknown experiment kind '" + kind + "'");

  Report rep;
  rep.config_echo = config;
  rep.versions = versions();
  for (auto& row : run_pool(tasks, o.threads)) rep.rows.push_back(std::move(row));

  json s = {{"kind", kind}, {"rows", rep.rows.size()}};
  std::vector<double> ns, ratios;
  std::size_t violations = 0;
  for (const auto& row : rep.rows) {
    if (row.contains("violation") && row["violation"].get<bool>()) ++violations;
    if (row.contains("ratio")) {
      ratios.push_back(row["ratio"].get<double>());
      if (row.contains("n")) ns.push_back(row["n"].get<double>());
    }
  }
  if (!ratios.empty()) {
    s["max_ratio"] = *std::max_element(ratios.begin(), ratios.end());
    s["min_ratio"] = *std::min_element(ratios.begin(), ratios.end());
    if (ns.size() == ratios.size()) s["trend_slope"] = least_squares_slope(ns, ratios);
  }
  s["violations"] = violations;
  rep.summary = s;
  rep.violation = violations > 0;
  return rep;
}

void write_report(const Report& report, const std::filesystem::path& json_path) {
  io::write_text(json_path, io::dump(report.to_json()) + "\n");
  // factor rows expand to one CSV line per pole contribution
  std::vector<json> lines;
  for (const auto& row : report.rows) {
    if (!row.contains("parts") || !row["parts"].is_array() || row["parts"].empty()) {
      lines.push_back(row);
      continue;
    }
    for (const auto& part : row["parts"]) {
      json line = row;
      line.erase("parts");
      for (auto it = part.begin(); it != part.end(); ++it) line["part_" + it.key()] = it.value();
      lines.push_back(line);
    }
  }
  std::vector<std::string> header;
  for (const auto& row : lines)
    for (const auto& k : flatten_keys(row))
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : lines) {
    std::vector<std::string> line;
    for (const auto& k : header) line.push_back(cell_for(row, k));
    cells.push_back(std::move(line));
  }
  auto csv = json_path;
  csv.replace_extension(".csv");
  io::write_csv(csv, header, cells);
}

}  // namespace gf
