#include "toric_mirror/cli.hpp"

#include <CLI11.hpp>

#include <sstream>

#include "toric_mirror/fan_io.hpp"
#include "toric_mirror/mirror.hpp"
#include "toric_mirror/seidel.hpp"

namespace toric::cli {

namespace {

using nlohmann::json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string fan;
  std::optional<int> order;
  std::string format = "text";
  std::optional<std::size_t> i;
  std::optional<std::size_t> j;
  std::string d;
  std::string route = "closed";
};

int parse_order(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw UsageError(what + " must be an integer, got '" + text + "'");
  if (value < 1) throw UsageError(what + " must be at least 1");
  return value;
}

int resolve_order(const Options& opt, const std::optional<std::string>& env, const FanSpec& spec) {
  if (opt.order) {
    if (*opt.order < 1) throw UsageError("--order must be at least 1");
    return *opt.order;
  }
  if (env && !env->empty()) return parse_order(*env, "ORDER");
  if (spec.order) return *spec.order;
  return spec.fan.dim >= 3 ? 6 : 8;
}

IntVector parse_class(const std::string& text) {
  IntVector d;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      d.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--d must be a comma-separated list of integers, got '" + text + "'");
    }
  }
  if (d.empty()) throw UsageError("--d is required");
  return d;
}

std::string vec_text(const IntVector& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + std::to_string(v[k]);
  return s + ")";
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::size_t one_based(std::size_t value, std::size_t count, const char* flag) {
  if (value < 1 || value > count)
    throw UsageError(std::string(flag) + " must lie in 1.." + std::to_string(count));
  return value - 1;
}

struct Session {
  const Options& opt;
  std::ostream& out;
  FanSpec spec;
  int order;

  bool as_json() const { return opt.format == "json"; }

  ToricManifold manifold() const { return ToricManifold::create(spec.fan, spec.divisor_matrix); }

  void emit(const json& j) const { out << j.dump(2) << "\n"; }
};

json series_list(const std::vector<Series>& list) {
  json a = json::array();
  for (const auto& s : list) a.push_back(to_json(s));
  return a;
}

int do_validate(const Session& s) {
  const FanReport report = validate(s.spec.fan);
  std::optional<ToricManifold> x;
  std::optional<FanGateError> gate;
  try {
    x.emplace(s.manifold());
  } catch (const FanGateError& e) {
    gate.emplace(e);
  }
  if (s.as_json()) {
    json j{{"fan", s.spec.name},
           {"smooth", report.smooth},
           {"complete", report.complete},
           {"projective", report.projective},
           {"semi_positive", report.semi_positive},
           {"fano", report.fano}};
    if (x) {
      j["fan_hash"] = fan_hash(*x);
      j["divisor_matrix"] = x->basis().entries();
      j["wall_classes"] = x->walls();
      j["mori_generators"] = x->cone_pair().mori_generators;
      j["nef_generators"] = x->cone_pair().nef_generators;
      json v = json::array();
      for (auto i : x->polytope_vertices()) v.push_back(i + 1);
      j["fan_polytope_vertices"] = v;
      j["z_weights"] = x->z_weights();
    }
    if (gate) j["gate_failure"] = {{"gate", gate_name(gate->gate())}, {"message", gate->what()}};
    s.emit(j);
  } else {
    s.out << "fan: " << s.spec.name << " (dim " << s.spec.fan.dim << ", " << s.spec.fan.rays.size()
          << " rays)\n";
    s.out << "smooth: " << yes(report.smooth) << "\ncomplete: " << yes(report.complete)
          << "\nprojective: " << yes(report.projective) << "\nsemi-positive: " << yes(report.semi_positive)
          << "\nfano: " << yes(report.fano) << "\n";
    if (x) {
      s.out << "divisor matrix:\n";
      for (std::size_t a = 0; a < x->rank(); ++a)
        s.out << "  p" << a + 1 << ": " << vec_text(x->basis().entries()[a]) << "\n";
      s.out << "wall classes:";
      for (const auto& w : x->walls()) s.out << " " << vec_text(w);
      s.out << "\nmori generators:";
      for (const auto& g : x->cone_pair().mori_generators) s.out << " " << vec_text(g);
      s.out << "\nnef generators:";
      for (const auto& g : x->cone_pair().nef_generators) s.out << " " << vec_text(g);
      s.out << "\nfan polytope vertices:";
      for (auto i : x->polytope_vertices()) s.out << " " << i + 1;
      s.out << "\nfan hash: " << fan_hash(*x) << "\n";
    }
  }
  if (gate) throw *gate;
  return exit_ok;
}

int do_mirror_map(const Session& s) {
  const ToricManifold x = s.manifold();
  const MirrorMap map = mirror_map(x, s.order);
  if (s.as_json()) {
    json j{{"order", s.order}, {"g", series_list(map.forward)}, {"u", series_list(map.inverse)},
           {"g00", to_json(map.h0_defect)}};
    s.emit(j);
  } else {
    s.out << "log q_a = log y_a + g_a(y), order " << s.order << "\n";
    for (std::size_t a = 0; a < x.rank(); ++a)
      s.out << "g" << a + 1 << " = " << format_series(map.forward[a], "y") << "\n";
    for (std::size_t a = 0; a < x.rank(); ++a)
      s.out << "y" << a + 1 << " = q" << a + 1 << " * (" << format_series(map.inverse[a], "q") << ")\n";
  }
  if (!s.as_json() && !map.h0_defect.is_zero())
    s.out << "warning: scalar 1/z term g00 = " << format_series(map.h0_defect, "y") << "\n";
  return exit_ok;
}

int do_g0(const Session& s) {
  const ToricManifold x = s.manifold();
  std::vector<std::size_t> rays;
  if (s.opt.j) rays.push_back(one_based(*s.opt.j, x.ray_count(), "--j"));
  else
    for (std::size_t j = 0; j < x.ray_count(); ++j) rays.push_back(j);
  json list = json::array();
  for (auto j : rays) {
    const Series g = g0_series(x, j, s.order);
    if (s.as_json()) list.push_back({{"j", j + 1}, {"series", to_json(g)}});
    else s.out << "g0^(" << j + 1 << ") = " << format_series(g, "y") << "\n";
  }
  if (s.as_json()) s.emit({{"order", s.order}, {"g0", list}});
  return exit_ok;
}

int do_corrections(const Session& s) {
  const ToricManifold x = s.manifold();
  const MirrorData data = MirrorData::compute(x, s.order);
  if (s.as_json()) {
    s.emit({{"order", s.order}, {"f", series_list(data.potential.f)}});
  } else {
    for (std::size_t j = 0; j < x.ray_count(); ++j)
      s.out << "f" << j + 1 << " = " << format_series(data.potential.f[j], "q") << "\n";
  }
  return exit_ok;
}

int do_potential(const Session& s) {
  const ToricManifold x = s.manifold();
  const MirrorData data = MirrorData::compute(x, s.order);
  const Potential& p = data.potential;
  if (s.as_json()) {
    s.emit({{"order", s.order},
            {"z_order", x.z_order(s.order)},
            {"z_weights", x.z_weights()},
            {"f", series_list(p.f)},
            {"W", to_json(p.total)}});
  } else {
    std::string w;
    for (std::size_t j = 0; j < x.ray_count(); ++j) {
      const std::string f = format_series(p.f[j], "q");
      w += (j ? " + " : "") + (f == "1" ? "" : "(" + f + ")*") + "z" + std::to_string(j + 1);
    }
    s.out << "W = " << w << "\n";
    s.out << "W = " << format_series(p.total, "z") << "   (z-exponents)\n";
  }
  return exit_ok;
}

int do_open_gw(const Session& s) {
  if (!s.opt.i) throw UsageError("open-gw needs --i");
  const ToricManifold x = s.manifold();
  const std::size_t i = one_based(*s.opt.i, x.ray_count(), "--i");
  const IntVector d = parse_class(s.opt.d);
  if (d.size() != x.rank())
    throw UsageError("--d needs " + std::to_string(x.rank()) + " entries, got " + std::to_string(d.size()));
  const MirrorData data = MirrorData::compute(x, s.order);
  const Rational n = open_gw(x, data.potential.f, i, d);
  if (s.as_json()) s.emit({{"i", i + 1}, {"d", d}, {"value", to_string(n)}});
  else s.out << to_string(n) << "\n";
  return exit_ok;
}

int do_seidel(const Session& s) {
  const ToricManifold x = s.manifold();
  const MirrorData data = MirrorData::compute(x, s.order);
  const auto batyrev = batyrev_elements(x, data);
  const auto seidel = seidel_elements(x, data);
  if (s.as_json()) {
    json b = json::array(), t = json::array();
    for (const auto& e : batyrev) b.push_back(series_list(e));
    for (const auto& e : seidel) t.push_back(series_list(e));
    s.emit({{"order", s.order}, {"batyrev", b}, {"seidel", t}});
    return exit_ok;
  }
  auto show = [&](const char* name, const std::vector<H2Element>& list) {
    for (std::size_t j = 0; j < list.size(); ++j) {
      s.out << name << j + 1 << " =";
      for (std::size_t a = 0; a < x.rank(); ++a)
        s.out << (a ? " + " : " ") << "(" << format_series(list[j][a], "q") << ")*p" << a + 1;
      s.out << "\n";
    }
  };
  show("Dt", batyrev);
  show("St", seidel);
  return exit_ok;
}

int do_lifts(const Session& s) {
  const ToricManifold x = s.manifold();
  const MirrorData data = MirrorData::compute(x, s.order);
  std::vector<LiftedElement> lifts;
  if (s.opt.route == "closed") lifts = seidel_lifts_closed(x, data);
  else if (s.opt.route == "jacobi") lifts = seidel_lifts_jacobi(data.jacobi);
  else throw UsageError("--route must be closed or jacobi");
  if (s.as_json()) {
    json rows = json::array();
    for (const auto& l : lifts) rows.push_back(series_list(l));
    s.emit({{"order", s.order}, {"route", s.opt.route}, {"lifts", rows}});
    return exit_ok;
  }
  for (std::size_t j = 0; j < lifts.size(); ++j) {
    s.out << "S" << j + 1 << " =";
    bool first = true;
    for (std::size_t i = 0; i < lifts[j].size(); ++i) {
      if (lifts[j][i].is_zero()) continue;
      s.out << (first ? " " : " + ") << "(" << format_series(lifts[j][i], "q") << ")*D" << i + 1;
      first = false;
    }
    if (first) s.out << " 0";
    s.out << "\n";
  }
  return exit_ok;
}

int do_verify(const Session& s) {
  const ToricManifold x = s.manifold();
  const MirrorData data = MirrorData::compute(x, s.order);
  const VerificationReport report = verify_all(x, data);
  if (s.as_json()) {
    s.emit(report.to_json());
  } else {
    s.out << "fan " << s.spec.name << ", order " << s.order << ", hash " << report.fan_hash << "\n";
    for (const auto& c : report.checks) {
      s.out << (c.pass() ? "PASS " : "FAIL ") << c.name;
      if (!c.pass()) s.out << " (" << c.failures.size() << " discrepancies)";
      s.out << "\n";
      for (std::size_t t = 0; t < c.failures.size() && t < 8; ++t) {
        const auto& f = c.failures[t];
        s.out << "  j=" << f.j + 1;
        if (f.k) s.out << " k=" << *f.k + 1;
        s.out << " exp=" << vec_text(IntVector(f.exp.begin(), f.exp.end())) << " coeff=" << to_string(f.coeff)
              << "\n";
      }
    }
    for (const auto& w : report.warnings) s.out << "warning: " << w << "\n";
  }
  return report.pass() ? exit_ok : exit_identity;
}

int do_examples(const Options& opt, std::ostream& out) {
  if (opt.fan.empty()) {
    if (opt.format == "json") {
      out << json(builtin_names()).dump(2) << "\n";
    } else {
      for (const auto& name : builtin_names()) out << name << "\n";
    }
    return exit_ok;
  }
  const auto spec = builtin_fan(opt.fan);
  if (!spec) throw UsageError("unknown built-in fan '" + opt.fan + "'");
  out << to_toml(*spec);
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& order_env) {
  CLI::App app{"Mirror maps, potentials and Seidel elements of semi-positive toric manifolds"};
  app.name("toric-mirror");
  app.require_subcommand(1, 1);
  Options opt;

  struct Verb {
    const char* name;
    const char* help;
  };
  const Verb verbs[] = {
      {"validate", "check the fan gates and print the divisor data"},
      {"mirror-map", "mirror map g_a(y) and its inverse"},
      {"g0", "hypergeometric series g0^(j)"},
      {"corrections", "correction terms f_j(q)"},
      {"potential", "potential W = sum f_j z_j"},
      {"open-gw", "open Gromov-Witten invariant n_{beta_i + d}"},
      {"seidel", "Batyrev and Seidel elements in H^2(X)"},
      {"lifts", "lifted Seidel elements in H^2(X, L)"},
      {"verify", "run the identity suite"},
      {"examples", "list built-in fans, or print one as TOML"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("--fan", opt.fan, "built-in name or path to a TOML fan file");
    if (std::string(v.name) != "examples") {
      sub->get_option("--fan")->required();
      sub->add_option("--order", opt.order, "truncation order (nef degree)");
    }
    sub->add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    subs[v.name] = sub;
  }
  subs["open-gw"]->add_option("--i", opt.i, "ray index (1-based)");
  subs["open-gw"]->add_option("--d", opt.d, "curve class, comma separated p-coordinates");
  subs["g0"]->add_option("--j", opt.j, "ray index (1-based)");
  subs["lifts"]->add_option("--route", opt.route, "closed or jacobi")->check(CLI::IsMember({"closed", "jacobi"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    if (verb == "examples") return do_examples(opt, out);
    FanSpec spec = resolve_fan(opt.fan);
    Session s{opt, out, std::move(spec), 0};
    s.order = resolve_order(opt, order_env, s.spec);
    if (verb == "validate") return do_validate(s);
    if (verb == "mirror-map") return do_mirror_map(s);
    if (verb == "g0") return do_g0(s);
    if (verb == "corrections") return do_corrections(s);
    if (verb == "potential") return do_potential(s);
    if (verb == "open-gw") return do_open_gw(s);
    if (verb == "seidel") return do_seidel(s);
    if (verb == "lifts") return do_lifts(s);
    if (verb == "verify") return do_verify(s);
    throw UsageError("unknown verb " + verb);
  } catch (const FanGateError& e) {
    err << "error: " << gate_name(e.gate()) << " gate failed: " << e.what() << "\n";
    return exit_gate;
  } catch (const OutOfModel& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse;
  } catch (const FanParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse;
  } catch (const FanStructureError& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
}

}  // namespace toric::cli
