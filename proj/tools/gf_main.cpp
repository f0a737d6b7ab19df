// gf: sharp Bernstein/Markov factors, verification rows and sweeps.

#include <CLI11.hpp>
#include <iostream>

#include "gf/extremal.hpp"
#include "gf/harness.hpp"
#include "gf/io.hpp"

namespace {

using gf::io::json;

enum Exit { Ok = 0, ConfigError = 2, NumericalFailure = 3, Violation = 4 };

struct Globals {
  std::size_t nq = 512;
  std::size_t samples = 4096;
  std::string out;
  std::uint64_t seed = 0;
  double tolerance = 5e-2;
  unsigned threads = 0;
};

void apply_globals(json& cfg, const Globals& g, CLI::App& app) {
  const auto given = [&](const char* name) { return app.count(name) > 0 || !cfg.contains(name + 2); };
  if (given("--nq")) cfg["nq"] = g.nq;
  if (given("--samples")) cfg["samples"] = g.samples;
  if (given("--seed")) cfg["seed"] = g.seed;
  if (app.count("--tol")) cfg["tolerance"] = g.tolerance;
  if (g.threads) cfg["threads"] = g.threads;
}

int emit(const gf::Report& rep, const Globals& g) {
  if (g.out.empty()) {
    std::cout << gf::io::dump(rep.to_json()) << '\n';
  } else {
    gf::write_report(rep, g.out);
    std::cout << gf::io::dump(rep.summary) << '\n';
  }
  return rep.violation ? Violation : Ok;
}

json extremal_report(const std::string& family, json params, int n, const Globals& g) {
  gf::VerifyOptions vo;
  vo.samples = g.samples;
  vo.tolerance = g.tolerance;
  vo.factor.green.nq = g.nq;
  gf::ExtremalMember m;
  gf::Domain domain;
  gf::Target at;
  if (family == "blaschke") {
    std::vector<gf::cplx> poles;
    for (const auto& p : params.at("poles")) poles.push_back(gf::io::parse_complex(p));
    std::vector<gf::cplx> all;
    for (int i = 0; i < n; ++i) all.insert(all.end(), poles.begin(), poles.end());
    m = gf::extremal_blaschke(all);
    domain = gf::Curve::make(gf::Circle{0.0, 1.0});
    at = {gf::Target::Kind::Param, 0.0, {}};
  } else if (family == "lemniscate") {
    const auto z0 = gf::io::parse_complex(params.at("z0"));
    m = gf::lemniscate_power(gf::io::parse_rational(params.at("base")), z0, n);
    domain = gf::make_domain(gf::io::parse_domain(params.at("domain")), vo.factor.green);
    at = {gf::Target::Kind::Point, 0.0, z0};
  } else if (family == "mobius") {
    const auto spec = gf::io::parse_curve(params.at("domain"));
    const auto* c = std::get_if<gf::Circle>(&spec);
    if (!c) throw gf::Error(gf::ErrorCode::UnsupportedCurve, "mobius family needs a circle domain");
    const auto z0 = gf::io::parse_complex(params.at("z0"));
    m = gf::mobius_power(*c, gf::io::parse_point(params.at("pole")), z0, n);
    domain = gf::Curve::make(*c);
    at = {gf::Target::Kind::Point, 0.0, z0};
  } else if (family == "markov") {
    const auto arc = gf::Arc::make(gf::io::parse_arc(params.at("domain")));
    const auto e = params.value("endpoint", std::string("A"));
    if (e != "A" && e != "B") throw gf::Error(gf::ErrorCode::ConfigInvalid, "endpoint must be A or B");
    const auto poles = params.contains("poles") ? gf::io::parse_poles(params["poles"])
                                                : gf::PoleSet::make({{gf::ExtPoint::infinity(), 1}});
    m = gf::markov_extremal(arc, poles.scaled(n), e == "A" ? gf::Endpoint::A : gf::Endpoint::B);
    domain = gf::make_domain(arc.spec(), vo.factor.green);
    at = gf::parse_target(e);
  } else {
    throw gf::Error(gf::ErrorCode::ConfigInvalid, "unknown family '" + family + "'");
  }
  const int k = params.value("k", 1);
  json row = gf::io::to_json(m);
  const auto v = gf::verify_inequality(m.fn, domain, at, k, vo);
  const json vj = gf::to_json(v);
  for (const auto& [key, val] : vj.items()) row[key] = val;
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp Bernstein and Markov factors for rational functions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--nq", g.nq, "quadrature nodes per Green solve (power of two)")->capture_default_str();
  app.add_option("--samples", g.samples, "sup-norm grid size")->capture_default_str();
  app.add_option("--out", g.out, "JSON report path; a .csv is written alongside");
  app.add_option("--seed", g.seed, "seed for randomized draws")->capture_default_str();
  app.add_option("--tol", g.tolerance, "violation tolerance on the ratio")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (default: all cores)");

  std::string domain, poles, at, arc, endpoint, pole, rational, family, params, config;
  int k = 1, n = 1;

  auto* factor = app.add_subcommand("factor", "Bernstein or Markov factor at a point");
  factor->add_option("--domain", domain, "curve or arc JSON (inline or file)")->required();
  factor->add_option("--poles", poles, "pole list JSON")->required();
  factor->add_option("--at", at, "t, x,y, A, B or global")->required();
  factor->add_option("--k", k, "derivative order")->capture_default_str();

  auto* om = app.add_subcommand("omega", "endpoint quantity Omega_a");
  om->add_option("--arc", arc, "arc JSON")->required();
  om->add_option("--endpoint", endpoint, "A or B")->required()->check(CLI::IsMember({"A", "B"}));
  om->add_option("--pole", pole, "x,y or inf")->required();

  auto* ver = app.add_subcommand("verify", "ratio |R^(k)| / (||R|| factor)");
  ver->add_option("--domain", domain, "curve or arc JSON")->required();
  ver->add_option("--rational", rational, "rational JSON")->required();
  ver->add_option("--at", at, "t, x,y, A, B or global")->required();
  ver->add_option("--k", k, "derivative order")->capture_default_str();

  auto* ext = app.add_subcommand("extremal", "build a near-extremal member and verify it");
  ext->add_option("--family", family, "blaschke, lemniscate, mobius or markov")
      ->required()
      ->check(CLI::IsMember({"blaschke", "lemniscate", "mobius", "markov"}));
  ext->add_option("--params", params, "family parameters JSON")->required();
  ext->add_option("--n", n, "order")->required();

  auto* sw = app.add_subcommand("sweep", "run an experiment config");
  sw->add_option("--config", config, "experiment JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Ok : ConfigError;
  }

  const auto point_json = [](const std::string& s) -> json {
    if (s == "inf" || s == "infinity") return "inf";
    const auto t = gf::parse_target(s);
    if (t.kind == gf::Target::Kind::Point) return gf::io::to_json(t.z);
    if (t.kind == gf::Target::Kind::Param) return gf::io::to_json(gf::cplx(t.t, 0.0));
    throw gf::Error(gf::ErrorCode::ConfigInvalid, "cannot read point '" + s + "'");
  };

  try {
    json cfg;
    if (*factor) {
      cfg = {{"kind", "factor"}, {"domain", gf::io::load_json_arg(domain)}, {"poles", gf::io::load_json_arg(poles)},
             {"at", at}, {"k", k}};
    } else if (*om) {
      cfg = {{"kind", "omega"}, {"arc", gf::io::load_json_arg(arc)}, {"endpoint", endpoint},
             {"poles", json::array({point_json(pole)})}, {"cross_check", true}};
    } else if (*ver) {
      cfg = {{"kind", "verify"}, {"domain", gf::io::load_json_arg(domain)},
             {"rationals", json::array({gf::io::load_json_arg(rational)})}, {"at", at}, {"k", k}};
    } else if (*ext) {
      gf::Report rep;
      const json p = gf::io::load_json_arg(params);
      rep.config_echo = {{"kind", "extremal"}, {"family", family}, {"params", p}, {"n", n}};
      rep.versions = gf::versions();
      const json row = extremal_report(family, p, n, g);
      rep.rows.push_back(row);
      rep.violation = row.at("violation").get<bool>();
      rep.summary = {{"kind", "extremal"}, {"rows", 1}, {"max_ratio", row.at("ratio")},
                     {"violations", rep.violation ? 1 : 0}};
      return emit(rep, g);
    } else {
      cfg = gf::io::load_json_arg(config);
    }
    apply_globals(cfg, g, app);
    return emit(gf::run_experiment(cfg), g);
  } catch (const gf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gf::is_config_error(e.code()) ? ConfigError : NumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ConfigError;
  }
}
