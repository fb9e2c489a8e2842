#include "irrtopo/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "irrtopo/derive.hpp"
#include "irrtopo/irr.hpp"
#include "irrtopo/nets.hpp"
#include "irrtopo/waybelow.hpp"

namespace irrtopo::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchema = "irrtopo-report/1";
constexpr const char* kVersion = "0.1.0";

struct Options {
  bool json_out = false;
  std::uint64_t seed = 1;
  std::size_t budget = 20000;
  std::vector<std::string> asserts;

  std::string file, set, net, subnet, point_a, point_b, battery = "small";
  bool iterate = false;
  int bound = kDefaultIterationBound;
  int level = 0;
};

struct Report {
  json results = json::object();
  json verdicts = json::object();
};

class AssertionSyntax : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

const char* kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::FinitePoset: return "finite";
    case SpaceKind::VSpace: return "vspace";
    case SpaceKind::RationalChain: return "rational";
  }
  return "finite";
}

const char* base_name(BaseTopology b) {
  switch (b) {
    case BaseTopology::Alexandroff: return "alexandroff";
    case BaseTopology::Scott: return "scott";
    case BaseTopology::Upper: return "upper";
  }
  return "alexandroff";
}

std::string status(const Verdict& v) { return to_string(v.status); }
std::string status(bool b) { return b ? "proven" : "refuted"; }

json witness_json(const SpacePresentation& s, const Witness& w, const std::string& replay = "") {
  json j;
  if (const auto* set = std::get_if<DefinableSet>(&w)) {
    j["kind"] = "set";
    j["value"] = format_set(s, *set);
  } else if (const auto* p = std::get_if<PointId>(&w)) {
    j["kind"] = "point";
    j["value"] = to_string(*p);
  } else if (const auto* n = std::get_if<std::string>(&w)) {
    j["kind"] = "net";
    j["value"] = *n;
  } else {
    return nullptr;
  }
  if (!replay.empty()) j["replay"] = replay;
  return j;
}

// Replays a set witness through `command`, which re-derives the refutation.
std::string set_replay(const Options& o, const SpacePresentation& s, const Witness& w, const std::string& command) {
  const auto* set = std::get_if<DefinableSet>(&w);
  if (!set) return "";
  return "irrtopo " + command + " " + o.file + " --set " + quoted(format_set(s, *set));
}

json verdict_json(const SpacePresentation& s, const Verdict& v, const std::string& replay = "") {
  json j;
  j["status"] = status(v);
  j["certificate"] = v.certificate;
  const json w = witness_json(s, v.witness, replay);
  if (!w.is_null()) j["witness"] = w;
  return j;
}

json sup_json(const SupResult& r) {
  json j;
  j["kind"] = to_string(r.kind);
  if (r.value) j["value"] = to_string(*r.value);
  if (r.witness) j["witness"] = json::array({to_string(r.witness->first), to_string(r.witness->second)});
  return j;
}

json string_array(const std::vector<std::string>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x);
  return a;
}

json point_array(const std::vector<PointId>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

BatteryConfig battery_config(const Options& o) {
  BatteryConfig cfg;
  if (o.battery == "large")
    cfg.size = BatteryConfig::Size::Large;
  else if (o.battery != "small")
    throw DomainError(DomainError::Kind::UnsupportedKind, "battery must be small or large");
  cfg.seed = o.seed;
  cfg.budget = o.budget;
  return cfg;
}

// ---------------------------------------------------------------------------
// Commands

void cmd_show(const SpacePresentation& s, const Options&, Report& r) {
  r.results["name"] = s.name;
  r.results["kind"] = kind_name(s.kind);
  r.results["topology"] = {{"base", base_name(s.topology.base)}, {"derived", s.topology.level}};
  r.results["presentation"] = emit_presentation(s);
  r.results["schema_points"] = point_array(schema_points(s));
  r.results["opens"] = string_array(topology_fingerprint(s));
  const Verdict spec = specialization_check(s);
  r.results["specialization"] = verdict_json(s, spec);
  r.verdicts["valid"] = "proven";
  r.verdicts["specialization"] = status(spec);
}

void cmd_closure(const SpacePresentation& s, const Options& o, Report& r) {
  const DefinableSet e = parse_set(s, o.set);
  r.results["set"] = format_set(s, e);
  r.results["closure"] = format_set(s, closure(s, e));
  r.verdicts["closed"] = status(is_closed(s, e));
}

void cmd_open(const SpacePresentation& s, const Options& o, Report& r) {
  const DefinableSet u = parse_set(s, o.set);
  const Verdict si = si_open(s, u);
  r.results["set"] = format_set(s, u);
  r.results["open"] = is_open(s, u);
  r.results["si_open"] = verdict_json(s, si, set_replay(o, s, si.witness, "irr"));
  r.verdicts["open"] = status(is_open(s, u));
  r.verdicts["si_open"] = status(si);
}

void cmd_irr(const SpacePresentation& s, const Options& o, Report& r) {
  const DefinableSet e = parse_set(s, o.set);
  const IrreducibilityResult res = is_irreducible(s, e);
  r.results["set"] = format_set(s, e);
  r.results["irreducible"] = res.irreducible;
  r.results["rule"] = to_string(res.certificate.rule);
  r.results["details"] = res.certificate.details;
  if (res.separating) {
    json sep = json::array();
    for (const auto* u : {&res.separating->first, &res.separating->second})
      sep.push_back({{"open", format_set(s, *u)},
                     {"replay", "irrtopo open " + o.file + " --set " + quoted(format_set(s, *u))}});
    r.results["separating"] = sep;
  }
  r.verdicts["irreducible"] = status(res.irreducible);
}

void cmd_sup(const SpacePresentation& s, const Options& o, Report& r) {
  const DefinableSet e = parse_set(s, o.set);
  const SupResult res = sup(s, e);
  r.results["set"] = format_set(s, e);
  r.results["sup"] = sup_json(res);
  r.verdicts["sup_exists"] = status(res.exists());
}

void cmd_si(const SpacePresentation& s, const Options& o, Report& r) {
  if (o.iterate) {
    const IterationTrace t = si_iterate(s, o.bound);
    json stages = json::array();
    for (const auto& st : t.stages) stages.push_back({{"level", st.level}, {"opens", string_array(st.fingerprint)}});
    r.results["stages"] = stages;
    r.results["bound"] = t.bound;
    r.results["gamma"] = t.gamma ? json(*t.gamma) : json(nullptr);
    r.verdicts["fixpoint"] = t.fixpoint_reached() ? "proven" : "unknown";
    r.verdicts["gamma"] = t.gamma ? std::to_string(*t.gamma) : "unknown";
    return;
  }
  const Verdict v = has_si_infty_property(s);
  r.results["level"] = s.topology.level;
  r.results["opens"] = string_array(topology_fingerprint(s));
  r.results["derived_opens"] = string_array(topology_fingerprint(si_derivative(s)));
  r.results["si_infty"] = verdict_json(s, v, set_replay(o, s, v.witness, "open"));
  r.verdicts["si_infty"] = status(v);
}

void cmd_sober(const SpacePresentation& s, const Options& o, Report& r) {
  const SobrietyReport rep = sobriety_spectrum(s);
  const Verdict cross = sobriety_crosscheck(s);
  for (const auto& [key, v] : {std::pair<const char*, const Verdict*>{"sober", &rep.sober},
                               {"bounded_sober", &rep.bounded_sober},
                               {"k_bounded_sober", &rep.k_bounded_sober}}) {
    r.results[key] = verdict_json(s, *v, set_replay(o, s, v->witness, "sup"));
    r.verdicts[key] = status(*v);
  }
  r.results["crosscheck"] = verdict_json(s, cross);
  r.verdicts["crosscheck"] = status(cross);
}

void cmd_waybelow(const SpacePresentation& s, const Options& o, Report& r) {
  const PointId x = parse_point(s, o.point_a), y = parse_point(s, o.point_b);
  const Verdict closed = way_below(s, x, y).holds;
  const Verdict family = way_below_by_family(s, x, y).holds;
  const WayBelowNetCheck nets = way_below_via_nets(s, x, y, make_battery(s, battery_config(o)));
  r.results["x"] = to_string(x);
  r.results["y"] = to_string(y);
  r.results["way_below"] = verdict_json(s, closed, set_replay(o, s, closed.witness, "sup"));
  r.results["by_family"] = verdict_json(s, family);
  json nj{{"net_form", nets.net_form}, {"agreement", verdict_json(s, nets.agreement)}};
  if (nets.witness_net)
    nj["witness_net"] = {{"value", *nets.witness_net},
                         {"replay", "irrtopo converge " + o.file + " --net " + quoted(*nets.witness_net) + " --to " +
                                        quoted(to_string(y))}};
  r.results["nets"] = nj;
  r.verdicts["way_below"] = status(closed);
  r.verdicts["family_agreement"] = status(closed.status == family.status);
  r.verdicts["net_agreement"] = status(nets.agreement);
}

void cmd_belowset(const SpacePresentation& s, const Options& o, Report& r) {
  const PointId x = parse_point(s, o.point_a);
  const DefinableSet b = below_set(s, x);
  r.results["point"] = to_string(x);
  r.results["below_set"] = format_set(s, b);
  if (b.empty()) {
    r.verdicts["irreducible"] = "refuted";
    r.verdicts["sup_is_point"] = "refuted";
    return;
  }
  const auto irr = is_irreducible(s, b);
  const SupResult sp = sup(s, b);
  r.results["irreducible"] = irr.irreducible;
  r.results["sup"] = sup_json(sp);
  r.verdicts["irreducible"] = status(irr.irreducible);
  r.verdicts["sup_is_point"] = status(sp.exists() && *sp.value == x);
}

void cmd_continuity(const SpacePresentation& s, const Options&, Report& r) {
  const ContinuityReport rep = is_irr_continuous(s);
  json pts = json::array();
  for (const auto& pc : rep.points) {
    json j{{"point", to_string(pc.point)}, {"below_set", format_set(s, pc.below)}, {"irreducible", status(pc.irreducible)}};
    if (pc.sup) j["sup"] = sup_json(*pc.sup);
    j["ok"] = pc.ok;
    pts.push_back(j);
  }
  r.results["continuous"] = verdict_json(s, rep.continuous);
  r.results["points"] = pts;
  r.verdicts["continuity"] = status(rep.continuous);
}

void cmd_interpolate(const SpacePresentation& s, const Options& o, Report& r) {
  const PointId z = parse_point(s, o.point_a), x = parse_point(s, o.point_b);
  const InterpolationResult res = interpolate(s, z, x);
  r.results["z"] = to_string(z);
  r.results["x"] = to_string(x);
  r.results["point"] = res.point ? json(to_string(*res.point)) : json(nullptr);
  r.results["hypotheses_met"] = res.hypotheses_met;
  r.results["note"] = res.note;
  r.verdicts["interpolation"] = status(res.point.has_value());
}

void cmd_converge(const SpacePresentation& s, const Options& o, Report& r) {
  NetSpec n = parse_net(s, o.net);
  if (!o.subnet.empty()) n = apply_subnet(s, n, parse_subnet(o.subnet));
  const PointId y = parse_point(s, o.point_a);
  const ConvergenceJudgment irr = irr_converges(s, n, y);
  const Verdict topo = topo_converges(s, n, y, o.level);
  r.results["net"] = format_net(n);
  r.results["point"] = to_string(y);
  r.results["level"] = o.level;
  r.results["eventual_lower_bounds"] = format_set(s, eventual_lower_bounds(s, n));
  json ij = verdict_json(s, irr.verdict);
  if (irr.witness) ij["set"] = format_set(s, *irr.witness);
  ij["thresholds"] = string_array(irr.thresholds);
  r.results["irr"] = ij;
  r.results["topo"] = verdict_json(s, topo, set_replay(o, s, topo.witness, "open"));
  r.verdicts["irr"] = status(irr.verdict);
  r.verdicts["topo"] = status(topo);
}

json axiom_json(const AxiomResult& a) {
  json j{{"status", to_string(a.status)}, {"cases", a.cases}};
  if (!a.detail.empty()) j["detail"] = a.detail;
  return j;
}

void cmd_kelley(const SpacePresentation& s, const Options& o, Report& r) {
  const BatteryConfig cfg = battery_config(o);
  const Battery b = make_battery(s, cfg);
  const KelleyReport k = kelley_check(s, cfg);
  r.results["battery"] = {{"size", o.battery}, {"nets", b.nets.size()}, {"points", b.points.size()},
                          {"subnets", b.omega_subnets.size()}};
  for (const auto& [key, a] : {std::pair<const char*, const AxiomResult*>{"constants", &k.constants},
                               {"subnets", &k.subnets},
                               {"divergence", &k.divergence},
                               {"iterated_limits", &k.iterated_limits}}) {
    r.results[key] = axiom_json(*a);
    r.verdicts[key] = to_string(a->status);
  }
}

void cmd_verdict(const SpacePresentation& s, const Options& o, Report& r) {
  const MainVerdict v = main_verdict(s, battery_config(o));
  r.results["irr_continuous"] = verdict_json(s, v.irr_continuous);
  r.results["k_bounded_sober"] = verdict_json(s, v.k_bounded_sober, set_replay(o, s, v.k_bounded_sober.witness, "sup"));
  r.results["theorem_conclusion"] = to_string(v.conclusion);
  json dis = json::array();
  for (const auto& c : v.disagreements)
    dis.push_back({{"net", c.net}, {"point", c.point}, {"irr", c.irr}, {"topo", c.topo},
                   {"replay", "irrtopo converge " + o.file + " --net " + quoted(c.net) + " --to " + quoted(c.point)}});
  r.results["empirical"] = {{"agreements", v.agreements}, {"disagreements", dis}};
  r.verdicts["continuity"] = status(v.irr_continuous);
  r.verdicts["k_bounded_sober"] = status(v.k_bounded_sober);
  r.verdicts["conclusion"] = to_string(v.conclusion);
  r.verdicts["empirical"] = status(v.disagreements.empty());
}

void cmd_induced(const SpacePresentation& s, const Options& o, Report& r) {
  const DefinableSet u = parse_set(s, o.set);
  const Verdict v = induced_open(s, u, make_battery(s, battery_config(o)));
  r.results["set"] = format_set(s, u);
  r.results["induced_open"] = verdict_json(s, v);
  r.results["open"] = is_open(s, u);
  r.verdicts["induced_open"] = status(v);
  r.verdicts["open"] = status(is_open(s, u));
  r.verdicts["agreement"] = status(v.proven() == is_open(s, u));
}

// ---------------------------------------------------------------------------
// Output

bool scalar(const json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

void render(const json& j, int indent, std::ostream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [key, val] : j.items()) {
      if (scalar(val)) {
        const std::string text = scalar_text(val);
        if (text.find('\n') == std::string::npos) {
          out << pad << key << ": " << text << "\n";
        } else {
          out << pad << key << ":\n";
          std::istringstream lines(text);
          for (std::string line; std::getline(lines, line);) out << pad << "  | " << line << "\n";
        }
      } else if (val.empty()) {
        out << pad << key << ": " << (val.is_array() ? "[]" : "{}") << "\n";
      } else {
        out << pad << key << ":\n";
        render(val, indent + 2, out);
      }
    }
    return;
  }
  for (const auto& item : j) {
    if (scalar(item)) {
      out << pad << "- " << scalar_text(item) << "\n";
    } else {
      out << pad << "-\n";
      render(item, indent + 2, out);
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int check_assertions(const Options& o, const json& verdicts, std::ostream& err) {
  int code = kOk;
  for (const auto& a : o.asserts) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) throw AssertionSyntax("assertion must look like key=value, got '" + a + "'");
    const std::string key = a.substr(0, eq), want = lower(a.substr(eq + 1));
    if (!verdicts.contains(key)) throw AssertionSyntax("no verdict named '" + key + "' for this command");
    const std::string got = lower(verdicts[key].get<std::string>());
    if (got != want) {
      err << "assertion failed: " << key << " is " << got << ", expected " << want << "\n";
      code = kAssertionFailed;
    }
  }
  return code;
}

}  // namespace

std::string fingerprint(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Irreducible-set topology on finitely presented countable T0 spaces", "irrtopo"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", o.json_out, "emit the JSON report");
  app.add_option("--seed", o.seed, "battery seed");
  app.add_option("--budget", o.budget, "convergence decisions per axiom");
  app.add_option("--assert", o.asserts, "key=value; exit 4 unless the verdict matches");

  using Handler = void (*)(const SpacePresentation&, const Options&, Report&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto sub = [&](const char* name, const char* help, Handler h) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("file", o.file, "space file")->required();
    commands.emplace_back(c, h);
    return c;
  };
  sub("show", "print the canonical presentation and its opens", cmd_show);
  sub("closure", "closure of a set", cmd_closure)->add_option("--set", o.set, "set literal, e.g. \"tail(A,5) | {top}\"")->required();
  sub("open", "openness in the topology and in its SI derivative", cmd_open)->add_option("--set", o.set, "set literal, e.g. \"tail(A,5) | {top}\"")->required();
  sub("irr", "irreducibility of a set", cmd_irr)->add_option("--set", o.set, "set literal, e.g. \"tail(A,5) | {top}\"")->required();
  sub("sup", "supremum of a set", cmd_sup)->add_option("--set", o.set, "set literal, e.g. \"tail(A,5) | {top}\"")->required();
  auto* si = sub("si", "SI derivative, or its iteration", cmd_si);
  si->add_flag("--iterate", o.iterate);
  si->add_option("--bound", o.bound, "iteration bound")->check(CLI::Range(1, 64));
  sub("sober", "sobriety spectrum", cmd_sober);
  auto* wb = sub("waybelow", "way-below relation", cmd_waybelow);
  wb->add_option("x", o.point_a, "point")->required();
  wb->add_option("y", o.point_b, "point")->required();
  wb->add_option("--battery", o.battery, "battery size: small or large");
  sub("belowset", "points way below a point", cmd_belowset)->add_option("x", o.point_a, "point")->required();
  sub("continuity", "Irr-continuity", cmd_continuity);
  auto* ip = sub("interpolate", "interpolant between two points", cmd_interpolate);
  ip->add_option("z", o.point_a, "lower point")->required();
  ip->add_option("x", o.point_b, "upper point")->required();
  auto* cv = sub("converge", "Irr-convergence and topological convergence of a net", cmd_converge);
  cv->add_option("--net", o.net, "net, e.g. \"interleave(chain(A),chain(B))\"")->required();
  cv->add_option("--to", o.point_a, "limit point")->required();
  cv->add_option("--level", o.level, "number of SI derivatives applied to the topology")->check(CLI::Range(0, 64));
  cv->add_option("--subnet", o.subnet, "subnet applied to the net first, e.g. \"parity(even)\"");
  sub("kelley", "Kelley axioms on a battery", cmd_kelley)->add_option("--battery", o.battery, "battery size: small or large");
  sub("verdict", "main theorem verdict with the empirical cross-check", cmd_verdict)->add_option("--battery", o.battery, "battery size: small or large");
  auto* ind = sub("induced", "openness in the topology induced by Irr-convergence", cmd_induced);
  ind->add_option("--set", o.set, "set literal, e.g. \"tail(A,5) | {top}\"")->required();
  ind->add_option("--battery", o.battery, "battery size: small or large");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  const auto chosen = std::find_if(commands.begin(), commands.end(), [](const auto& c) { return c.first->parsed(); });
  Report r;
  std::string fp;
  SpacePresentation s;
  try {
    s = parse_presentation(read_file(o.file));
    fp = fingerprint(emit_presentation(s));
    chosen->second(s, o, r);
  } catch (const ParseError& e) {
    err << o.file << ": " << e.what() << "\n";
    return kParseError;
  } catch (const ValidationError& e) {
    err << o.file << ": invalid space: " << e.what() << "\n";
    return kValidationError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  json doc;
  doc["schema"] = kSchema;
  doc["version"] = kVersion;
  doc["command"] = chosen->first->get_name();
  doc["space"] = {{"name", s.name}, {"kind", kind_name(s.kind)}, {"fingerprint", fp}};
  doc["seed"] = o.seed;
  doc["budget"] = o.budget;
  doc["verdicts"] = r.verdicts;
  doc["results"] = r.results;

  int code = kOk;
  try {
    code = check_assertions(o, r.verdicts, err);
  } catch (const AssertionSyntax& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }
  if (o.json_out)
    out << doc.dump(2) << "\n";
  else
    render(doc, 0, out);
  if (code != kOk) return code;
  for (const auto& [key, val] : r.verdicts.items()) {
    const std::string v = val.get<std::string>();
    if (v == "unknown" || v == "inconclusive") return kUnknown;
  }
  return kOk;
}

}  // namespace irrtopo::cli
