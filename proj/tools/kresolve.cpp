#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kresolve/galedual.hpp"
#include "kresolve/geometry.hpp"

using namespace kresolve;
using nlohmann::json;

namespace {

enum class Command { implicitize, check, resultant, discriminant };

struct JobConfig {
  Command command = Command::implicitize;
  std::string input;
  std::optional<int> nu;
  std::string method = "interpolate";
  std::optional<std::string> mode;
  std::string report = "text";
  std::optional<std::string> transform;
  std::optional<std::string> output;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CoprimeMode parse_mode(const std::string& s) {
  if (s == "strict") return CoprimeMode::strict;
  if (s == "permissive") return CoprimeMode::permissive;
  throw InputError("mode must be strict or permissive, got " + s);
}

MapSpec load_map(const JobConfig& cfg) {
  json j;
  try {
    j = json::parse(read_file(cfg.input));
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("t_vars") || !j.contains("pairs")) throw InputError("input needs \"t_vars\" and \"pairs\"");
  std::vector<std::string> t_vars;
  std::vector<std::pair<std::string, std::string>> pair_vars;
  try {
    t_vars = j.at("t_vars").get<std::vector<std::string>>();
    if (j.contains("pair_vars"))
      for (const auto& p : j.at("pair_vars")) pair_vars.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    else
      for (std::size_t i = 0; i < t_vars.size(); ++i) pair_vars.emplace_back("x" + std::to_string(i), "y" + std::to_string(i));
  } catch (const json::exception& e) {
    throw InputError(std::string("schema: ") + e.what());
  }
  if (!j.at("pairs").is_array()) throw InputError("schema: \"pairs\" must be an array");
  std::string mode = j.value("mode", std::string("strict"));
  if (cfg.mode) mode = *cfg.mode;
  try {
    const Ring ring = std::make_shared<const RingSpec>(t_vars, pair_vars);
    std::vector<std::pair<MPoly, MPoly>> pairs;
    for (const auto& p : j.at("pairs")) {
      if (!p.is_object() || !p.contains("f") || !p.contains("g") || !p.at("f").is_string() || !p.at("g").is_string())
        throw InputError("schema: each pair needs string fields \"f\" and \"g\"");
      pairs.emplace_back(parse_poly(p.at("f").get<std::string>(), ring), parse_poly(p.at("g").get<std::string>(), ring));
    }
    return MapSpec(ring, std::move(pairs), parse_mode(mode));
  } catch (const AlgebraError& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

json subset_json(const Subset& s) { return json(s); }

json conditions_json(const ConditionReport& c) {
  json j;
  j["acyclic"] = c.avramov_ok;
  j["avramov_ok"] = c.avramov_ok;
  j["geometric_ok"] = c.geometric_ok;
  j["minor_ideals"] = json::array();
  for (const auto& r : c.avramov)
    j["minor_ideals"].push_back({{"r", r.r}, {"codim", r.codim}, {"required", r.required}, {"ok", r.ok}});
  j["intersections"] = json::array();
  for (const auto& r : c.geometric)
    j["intersections"].push_back({{"r", r.r}, {"dimension", r.dimension}, {"allowed", r.allowed}, {"ok", r.ok}});
  j["x_dimension"] = c.x_dimension;
  j["x_points"] = json::array();
  for (const auto& p : c.x_points) j["x_points"].push_back(p.to_string());
  if (c.strict_checked) {
    j["strict_ok"] = c.strict_ok;
    j["strict_witnesses"] = json::array();
    for (const auto& w : c.strict_witnesses) j["strict_witnesses"].push_back(subset_json(w));
    j["subset_codims"] = json::array();
    for (const auto& s : c.subset_codims) j["subset_codims"].push_back({{"alpha", subset_json(s.alpha)}, {"codim", s.codim}});
  }
  j["lemma_ok"] = c.lemma_ok ? json(*c.lemma_ok) : json(nullptr);
  j["diagnostics"] = c.diagnostics;
  return j;
}

json ring_json(const Ring& r) {
  json pairs = json::array();
  for (const auto& [x, y] : r->pairs()) pairs.push_back({x, y});
  return {{"t_vars", r->t_vars()}, {"pair_vars", pairs}};
}

json certificate_json(const DetCertificate& c) {
  return {{"method", c.method},
          {"pilot", c.pilot},
          {"primes", c.primes.size()},
          {"grid_points", c.grid_points},
          {"local_reselections", c.local_reselections},
          {"singular_points", c.singular_points}};
}

json resultant_json(const ResultantPoly& res) {
  return {{"resultant", res.poly.to_string()},
          {"multidegree", res.multidegree},
          {"nu", res.nu},
          {"eta", res.eta},
          {"certificate", certificate_json(res.certificate)}};
}

json implicit_json(const MapSpec& spec, const ImplicitReport& rep) {
  json j = resultant_json(rep.res);
  j["ring"] = ring_json(spec.ring());
  j["H"] = rep.H ? json(rep.H->to_string()) : json(nullptr);
  j["deg_phi"] = rep.H ? json(rep.deg_phi) : json(nullptr);
  j["extra_factors"] = json::array();
  for (const auto& a : rep.attributions) {
    json f;
    if (a.point) {
      f["point"] = a.point->to_string();
    } else {
      json comp = {{"dimension", a.component.dimension}};
      if (a.component.param) {
        json m = json::array();
        for (const auto& row : a.component.param->matrix) {
          json r = json::array();
          for (const auto& x : row) r.push_back(x.get_str());
          m.push_back(r);
        }
        comp["parametrization"] = m;
      }
      f["component"] = comp;
    }
    f["alpha"] = subset_json(a.component.alpha);
    f["factor"] = a.factor.to_string();
    f["exponent"] = a.exponent;
    j["extra_factors"].push_back(f);
  }
  if (!rep.H && rep.residual) {
    j["residual"] = json::array();
    for (const auto& p : rep.residual->parts)
      j["residual"].push_back({{"factor", p.part.normalized().to_string()}, {"multiplicity", p.multiplicity}});
  }
  j["conditions"] = conditions_json(rep.conditions);
  j["diagnostics"] = rep.diagnostics;
  j["timings_ms"] = rep.timings_ms;
  return j;
}

void text_conditions(std::ostream& out, const ConditionReport& c) {
  out << "acyclic: " << (c.avramov_ok ? "yes" : "no") << "\n";
  for (const auto& r : c.avramov)
    out << "  codim I_" << r.r << " = " << r.codim << " (need >= " << r.required << ")" << (r.ok ? "" : "  FAIL") << "\n";
  if (c.strict_checked) {
    out << "strict codimension: " << (c.strict_ok ? "yes" : "no");
    for (const auto& w : c.strict_witnesses) out << " " << subset_to_string(w);
    out << "\n";
  }
  for (const auto& d : c.diagnostics) out << "  " << d << "\n";
}

void text_implicit(std::ostream& out, const ImplicitReport& rep) {
  text_conditions(out, rep.conditions);
  if (!rep.res.poly.is_zero()) {
    out << "multidegree:";
    for (auto e : rep.res.multidegree) out << " " << e;
    out << "\nnu: " << rep.res.nu << " (eta " << rep.res.eta << ")\n";
    out << "resultant: " << rep.res.poly.to_string() << "\n";
  }
  for (const auto& a : rep.attributions) {
    out << "extra factor: (" << a.factor.to_string() << ")^" << a.exponent;
    if (a.point)
      out << " at " << a.point->to_string();
    else
      out << " on a component of dimension " << a.component.dimension;
    out << " alpha " << subset_to_string(a.component.alpha) << "\n";
  }
  if (rep.H) out << "H: " << rep.H->to_string() << "\ndeg_phi: " << rep.deg_phi << "\n";
  for (const auto& d : rep.diagnostics) out << "diagnostic: " << d << "\n";
}

DetOptions det_options() {
  DetOptions opt;
  if (const char* s = std::getenv("KRESOLVE_SEED")) {
    try {
      opt.seed = std::stoull(s, nullptr, 0);
    } catch (const std::exception&) {
      throw InputError(std::string("KRESOLVE_SEED is not an integer: ") + s);
    }
  }
  return opt;
}

DetMethod method_of(const JobConfig& cfg) {
  const auto m = parse_det_method(cfg.method);
  if (!m) throw InputError("unknown method " + cfg.method);
  return *m;
}

void check_nu(const JobConfig& cfg, const MapSpec& spec) {
  if (cfg.nu && *cfg.nu <= spec.eta())
    throw InputError("--nu " + std::to_string(*cfg.nu) + " must exceed eta = " + std::to_string(spec.eta()));
}

int implicit_exit(const ImplicitReport& rep) {
  if (!rep.conditions.avramov_ok || rep.res.poly.is_zero() || !rep.H) return 2;
  return 0;
}

int run(const JobConfig& cfg, std::ostream& out) {
  const bool as_json = cfg.report == "json";
  switch (cfg.command) {
    case Command::check: {
      const MapSpec spec = load_map(cfg);
      ConditionReport c = check_acyclicity(spec);
      check_strict_codim(spec, c);
      for (const auto& w : spec.warnings()) c.diagnostics.push_back(w);
      if (as_json)
        out << json{{"ring", ring_json(spec.ring())}, {"conditions", conditions_json(c)}}.dump(2) << "\n";
      else
        text_conditions(out, c);
      return c.avramov_ok ? 0 : 2;
    }
    case Command::resultant: {
      const MapSpec spec = load_map(cfg);
      check_nu(cfg, spec);
      const auto t0 = std::chrono::steady_clock::now();
      const ResultantPoly res = macaulay_resultant(spec, cfg.nu, method_of(cfg), det_options());
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
      if (as_json) {
        json j = resultant_json(res);
        j["ring"] = ring_json(spec.ring());
        j["diagnostics"] = res.diagnostics;
        j["timings_ms"] = {{"resultant", ms}};
        out << j.dump(2) << "\n";
      } else {
        out << "resultant: " << res.poly.to_string() << "\n";
        for (const auto& d : res.diagnostics) out << "diagnostic: " << d << "\n";
      }
      return res.poly.is_zero() ? 2 : 0;
    }
    case Command::implicitize: {
      const MapSpec spec = load_map(cfg);
      check_nu(cfg, spec);
      const ImplicitReport rep = implicitize(spec, {cfg.nu, method_of(cfg), det_options()});
      if (as_json)
        out << implicit_json(spec, rep).dump(2) << "\n";
      else
        text_implicit(out, rep);
      return implicit_exit(rep);
    }
    case Command::discriminant: {
      IntMatrix raw;
      GaleMatrix b = [&] {
        try {
          raw = parse_int_matrix(read_file(cfg.input));
          return GaleMatrix(raw);
        } catch (const std::exception& e) {
          throw InputError(cfg.input + ": " + e.what());
        }
      }();
      json provenance = {{"matrix", raw}, {"source", cfg.input}};
      if (cfg.transform) {
        IntMatrix m;
        try {
          m = parse_int_matrix(read_file(*cfg.transform));
          b = column_transform(b, m);
        } catch (const std::exception& e) {
          throw InputError(*cfg.transform + ": " + e.what());
        }
        provenance["transform"] = m;
        provenance["transformed"] = b.entries();
      }
      const Ring ring = gale_ring(b.cols());
      const MapSpec spec = [&] {
        try {
          return gale_map(b, ring, cfg.mode ? parse_mode(*cfg.mode) : CoprimeMode::strict);
        } catch (const AlgebraError& e) {
          throw InputError(e.what());
        }
      }();
      check_nu(cfg, spec);
      const ImplicitReport rep = implicitize(spec, {cfg.nu, method_of(cfg), det_options()});
      if (as_json) {
        json j = implicit_json(spec, rep);
        j["provenance"] = provenance;
        json pairs = json::array();
        for (const auto& p : spec.pairs()) pairs.push_back({{"f", p.f.to_string()}, {"g", p.g.to_string()}});
        j["pairs"] = pairs;
        out << j.dump(2) << "\n";
      } else {
        out << "matrix:\n" << int_matrix_to_string(b.entries());
        for (std::size_t i = 0; i < spec.size(); ++i)
          out << "pair " << i << ": (" << spec.pair(i).f.to_string() << ", " << spec.pair(i).g.to_string() << ")\n";
        text_implicit(out, rep);
      }
      return implicit_exit(rep);
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Implicit equations of rational maps to products of projective lines"};
  app.require_subcommand(1);
  JobConfig cfg;
  auto add_common = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", cfg.input, what)->required()->check(CLI::ExistingFile);
    sub->add_option("--nu", cfg.nu, "strand degree, must exceed eta");
    sub->add_option("--method", cfg.method, "determinant backend")->check(CLI::IsMember({"cayley", "interpolate", "both"}));
    sub->add_option("--mode", cfg.mode, "coprimality check")->check(CLI::IsMember({"strict", "permissive"}));
    sub->add_option("--report", cfg.report, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("-o,--output", cfg.output, "write the report to a file");
  };
  auto* imp = app.add_subcommand("implicitize", "implicit equation of a map given as JSON");
  add_common(imp, "map file (JSON)");
  auto* chk = app.add_subcommand("check", "acyclicity and codimension conditions only");
  add_common(chk, "map file (JSON)");
  auto* res = app.add_subcommand("resultant", "resultant of the linear forms only");
  add_common(res, "map file (JSON)");
  auto* dis = app.add_subcommand("discriminant", "Gale-dual map of an integer matrix");
  add_common(dis, "matrix file");
  dis->add_option("--transform", cfg.transform, "unimodular column transform")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (imp->parsed()) cfg.command = Command::implicitize;
  if (chk->parsed()) cfg.command = Command::check;
  if (res->parsed()) cfg.command = Command::resultant;
  if (dis->parsed()) cfg.command = Command::discriminant;

  std::ofstream file;
  if (cfg.output) {
    file.open(*cfg.output);
    if (!file) {
      std::cerr << "error: cannot write " << *cfg.output << "\n";
      return 1;
    }
  }
  std::ostream& out = cfg.output ? static_cast<std::ostream&>(file) : std::cout;
  try {
    return run(cfg, out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const AlgebraError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
