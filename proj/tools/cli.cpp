#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sdcat/classify.hpp"
#include "sdcat/colimits.hpp"
#include "sdcat/errors.hpp"
#include "sdcat/io.hpp"
#include "sdcat/oracle.hpp"

namespace sdcat {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kParseExit = 64;
constexpr int kValidationExit = 65;
constexpr int kBudgetExit = 69;

std::optional<std::uint64_t> env_budget() {
  const char* v = std::getenv("SDCAT_BUDGET");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  unsigned long long b = std::strtoull(v, &end, 10);
  if (*end) throw ParseError("SDCAT_BUDGET must be a positive integer");
  return b;
}

int limit_exit(LimitStatus s) {
  switch (s) {
    case LimitStatus::Exists: return 0;
    case LimitStatus::NotExists: return 1;
    case LimitStatus::Undecided: return 2;
  }
  return 2;
}

json map_json(const BlockMap& f) {
  json rules = json::object();
  const Alphabet& a = f.source()->alphabet();
  const Alphabet& b = f.target()->alphabet();
  for (int i = 0; i < f.domain().size(); ++i) rules[compact(a, f.domain().word(i))] = b.token(f.rule()[i]);
  return json{{"radius", f.radius()}, {"rules", rules}};
}

std::string text_line(const json& v) {
  std::string s = v.value("answer", v.value("status", std::string("?")));
  if (v.contains("note") && !v["note"].get<std::string>().empty()) s += ": " + v["note"].get<std::string>();
  if (v.contains("reason") && !v["reason"].get<std::string>().empty()) s += ": " + v["reason"].get<std::string>();
  if (v.contains("witness")) s += "\nwitness: " + v["witness"].dump();
  if (v.contains("certificate")) s += "\ncertificate: " + v["certificate"].dump();
  if (v.contains("bound")) s += "\nbound: " + v["bound"].dump();
  return s;
}

fs::path sibling(const fs::path& out, const std::string& suffix) {
  return out.parent_path() / (out.stem().string() + suffix);
}

struct Context {
  std::ostream& out;
  bool as_json = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  int emit(json report, const std::string& text, int code) {
    report["exit_code"] = code;
    report["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (as_json)
      out << report.dump(2) << "\n";
    else
      out << text << "\n";
    return code;
  }
};

// ---------------------------------------------------------------- analyze

int cmd_analyze(Context& ctx, const std::string& file, int period_upto) {
  auto x = load_shift(file);
  json r;
  r["command"] = "analyze";
  r["file"] = file;
  r["alphabet"] = x->alphabet().tokens();
  r["cover_states"] = x->cover().n;
  r["empty"] = x->is_empty();
  auto sft = is_sft(*x);
  r["sft"] = sft.is_yes();
  r["window"] = sft.is_yes() ? sft.certificate.value("window", 0) : 0;
  r["transitive"] = is_transitive(*x);
  r["mixing"] = is_mixing(*x);
  r["finite"] = is_finite(*x);
  r["countable"] = is_countable(*x);
  r["constituents"] = constituents(*x).size();
  auto per = periods(*x);
  r["periods_upto"] = per.upto(period_upto);
  r["period_residues"] = json{{"period", per.period()}, {"preperiod", per.preperiod()}, {"residues", per.residues()}};
  r["monoid_size"] = x->monoid().size();
  if (x->point()) r["point"] = x->alphabet().token(*x->point());
  std::ostringstream t;
  for (auto it = r.begin(); it != r.end(); ++it)
    if (it.key() != "command") t << it.key() << ": " << it.value().dump() << "\n";
  std::string text = t.str();
  text.pop_back();
  return ctx.emit(r, text, 0);
}

// ---------------------------------------------------------------- build

int cmd_build(Context& ctx, const std::string& op, const std::vector<std::string>& inputs, CategoryTag cat,
              const std::string& output, int window_cap) {
  auto need = [&](std::size_t n) {
    if (inputs.size() != n)
      throw ParseError("build " + op + " takes " + std::to_string(n) + " input file(s), got " +
                       std::to_string(inputs.size()));
  };
  LimitResult res;
  if (op == "product" || op == "coproduct") {
    need(2);
    auto x = load_shift(inputs[0]);
    auto y = load_shift(inputs[1]);
    require_object(*x, cat);
    require_object(*y, cat);
    res = op == "product" ? product(x, y, cat) : coproduct(x, y, cat);
  } else if (op == "pullback" || op == "equalizer") {
    need(2);
    auto f = load_bmap(inputs[0]);
    auto g = load_bmap(inputs[1]);
    res = op == "pullback" ? pullback(f, g, cat) : equalizer(f, g, cat);
  } else if (op == "kernel-pair") {
    need(1);
    res = kernel_pair(load_bmap(inputs[0]), cat);
  } else if (op == "image") {
    need(1);
    res = image_factorization(load_bmap(inputs[0]), cat, window_cap);
  } else if (op == "union") {
    need(2);
    auto m = subobject_union(load_bmap(inputs[0]), load_bmap(inputs[1]));
    res.status = LimitStatus::Exists;
    res.object = m.source();
    res.legs = {m};
  } else if (op == "terminal") {
    need(0);
    res = terminal(cat);
  } else if (op == "initial") {
    need(0);
    res = initial(cat);
  } else {
    throw ParseError("unknown build operation '" + op + "'");
  }
  json r = to_json(res);
  r["command"] = "build " + op;
  r["category"] = cat.name();
  if (res.exists() && res.object && !output.empty()) {
    save_shift(*res.object, output);
    r["output"] = output;
    json legs = json::array();
    for (std::size_t i = 0; i < res.legs.size(); ++i) {
      auto p = sibling(output, ".leg" + std::to_string(i + 1) + ".bmap");
      save_bmap(res.legs[i], p);
      legs.push_back(p.string());
    }
    r["leg_files"] = legs;
  }
  std::string text = text_line(r);
  if (res.exists() && res.object) text += "\nalphabet: " + json(res.object->alphabet().tokens()).dump();
  return ctx.emit(r, text, limit_exit(res.status));
}

// ---------------------------------------------------------------- check

Verdict plain(bool b, const std::string& yes, const std::string& no, json witness = nullptr) {
  return b ? Verdict::yes(yes) : Verdict::no(no).with_witness(std::move(witness));
}

int cmd_check(Context& ctx, const std::string& prop, const std::vector<std::string>& files, CategoryTag cat,
              const ClassifyCaps& caps, const std::string& cert_path) {
  Verdict v;
  json r;
  r["command"] = "check " + prop;
  r["category"] = cat.name();
  r["files"] = files;
  if (prop == "exists-morphism") {
    if (files.size() != 2) throw ParseError("check exists-morphism takes two .shift files");
    auto z = load_shift(files[0]);
    auto y = load_shift(files[1]);
    require_object(*z, cat);
    require_object(*y, cat);
    v = exists_morphism(*z, *y);
  } else {
    if (files.size() != 1) throw ParseError("check " + prop + " takes one .bmap file");
    auto f = load_bmap(files[0]);
    require_morphism(f, cat);
    if (prop == "epic") {
      v = is_epic(f, cat);
    } else if (prop == "monic") {
      v = is_monic(f, cat);
    } else if (prop == "split-epic") {
      v = is_split_epic(f, cat, caps);
    } else if (prop == "split-monic") {
      v = is_split_monic(f, cat, caps);
    } else if (prop == "regular-epic") {
      v = is_regular_epic(f, cat, caps);
    } else if (prop == "regular-monic") {
      v = is_regular_monic(f, cat, caps);
    } else if (prop == "preinjective") {
      v = is_preinjective(f);
    } else if (prop == "injective") {
      auto fam = injectivity_family(f);
      v = plain(fam.injective, "injective", "not injective", fam.witness);
    } else if (prop == "surjective") {
      auto w = surjectivity_witness(f);
      v = w ? Verdict::no("not surjective").with_witness(json{{"word", f.target()->alphabet().render(*w)}})
            : Verdict::yes("surjective");
    } else if (prop == "peric") {
      v = is_peric(f);
    } else {
      throw ParseError("unknown property '" + prop + "'");
    }
  }
  r["verdict"] = to_json(v);
  if (v.certificate_map) {
    r["certificate_map"] = map_json(*v.certificate_map);
    if (!cert_path.empty()) {
      save_bmap(*v.certificate_map, cert_path);
      r["certificate_file"] = cert_path;
    }
  }
  return ctx.emit(r, text_line(r["verdict"]), exit_code(v.answer));
}

// ---------------------------------------------------------------- coeq-id

int cmd_coeq(Context& ctx, const std::string& file, CategoryTag cat, const CoequalizerCaps& caps,
             const std::string& output) {
  auto f = load_bmap(file);
  auto res = coequalizer_id(f, cat, caps);
  json r = to_json(res);
  r["command"] = "coeq-id";
  r["category"] = cat.name();
  if (res.exists() && !res.legs.empty()) {
    r["quotient"] = map_json(res.legs[0]);
    if (!output.empty()) {
      save_bmap(res.legs[0], output);
      r["output"] = output;
    }
  }
  return ctx.emit(r, text_line(r), limit_exit(res.status));
}

// ---------------------------------------------------------------- dynamics

int cmd_dynamics(Context& ctx, const std::string& file, int cap, int levels, const std::vector<std::string>& blocking,
                 std::uint64_t max_words) {
  auto f = load_bmap(file);
  const Alphabet& a = f.source()->alphabet();
  json r;
  r["command"] = "dynamics";
  r["file"] = file;
  r["reversible"] = to_json(is_reversible(f));
  auto ep = eventual_periodicity(f, cap, max_words);
  r["eventual_periodicity"] = ep.found ? json{{"k", ep.preperiod}, {"p", ep.period}}
                                       : json{{"cap", ep.cap}, {"budget_stop", ep.budget_stop}};
  if (ep.found) r["visibly_eventually_periodic"] = to_json(is_visibly_eventually_periodic(f, ep));
  json ct = json::array();
  for (int n = 1; n <= levels; ++n) ct.push_back(chain_transitive_level(f, n));
  r["chain_transitive_levels"] = ct;
  auto sn = spreading_nilpotent(f);
  r["spreading_state"] = sn.spreading ? json(a.token(*sn.spreading)) : json(nullptr);
  r["nilpotent"] = sn.nilpotent ? json{{"steps", sn.nilpotent_steps}, {"symbol", a.token(sn.nil_symbol.value_or(0))}}
                                : json(false);
  if (!blocking.empty()) {
    std::vector<Word> ws;
    for (const auto& s : blocking) ws.push_back(a.parse_word(s));
    r["visibly_blocking"] = to_json(visibly_blocking(f, ws));
  }
  std::ostringstream t;
  for (auto it = r.begin(); it != r.end(); ++it)
    if (it.key() != "command") t << it.key() << ": " << it.value().dump() << "\n";
  std::string text = t.str();
  text.pop_back();
  return ctx.emit(r, text, 0);
}

// ---------------------------------------------------------------- oracle

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_census(Context& ctx, int radius, int k, const std::string& checks, const std::string& output) {
  std::vector<oracle::Property> props;
  for (const auto& c : split_list(checks)) props.push_back(oracle::parse_property(c));
  if (props.empty()) throw ParseError("oracle census needs at least one check");
  int bad = 0;
  std::string csv = oracle::census_csv(radius, k, props, &bad);
  json r{{"command", "oracle census"}, {"radius", radius}, {"alphabet", k}, {"disagreements", bad}};
  if (!output.empty()) {
    std::ofstream(output) << csv;
    r["output"] = output;
  }
  std::string text = output.empty() ? csv + "disagreements: " + std::to_string(bad)
                                    : "disagreements: " + std::to_string(bad);
  return ctx.emit(r, text, bad == 0 ? 0 : 1);
}

int cmd_oracle_decide(Context& ctx, const std::string& prop, const std::string& file, const oracle::Bounds& b) {
  auto f = load_bmap(file);
  auto p = oracle::parse_property(prop);
  bool v = oracle::brute_decide(p, f, b);
  json r{{"command", "oracle decide"}, {"property", oracle::to_string(p)}, {"file", file}, {"value", v}};
  return ctx.emit(r, v ? "true" : "false", v ? 0 : 1);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sliding block codes between sofic shifts, classified in twelve categories", "sdcat"};
  app.require_subcommand(1);
  Context ctx{out};
  std::string category_s;
  auto add_json = [&](CLI::App* c) { c->add_flag("--json", ctx.as_json, "Print a JSON report"); };

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Structural report for a .shift file");
  std::string a_file;
  int a_periods = 12;
  analyze->add_option("file", a_file, ".shift file")->required();
  analyze->add_option("--periods", a_periods, "Report Per(X) up to this n");
  add_json(analyze);

  // build
  auto* build = app.add_subcommand("build", "Construct a limit, colimit or image");
  std::string b_op, b_out;
  std::vector<std::string> b_inputs;
  int b_window = 8;
  build->add_option("op", b_op, "product|coproduct|pullback|equalizer|kernel-pair|image|union|terminal|initial")
      ->required();
  build->add_option("inputs", b_inputs, "Input .shift or .bmap files");
  build->add_option("--category", category_s, "Category tag, e.g. K3")->required();
  build->add_option("-o,--output", b_out, "Output .shift; legs go to sibling .bmap files");
  build->add_option("--window-cap", b_window, "Window cap for the image factorization");
  add_json(build);

  // check
  auto* check = app.add_subcommand("check", "Decide a morphism property");
  std::string c_prop, c_cert;
  std::vector<std::string> c_files;
  ClassifyCaps caps;
  check->add_option("property", c_prop,
                    "epic|monic|split-epic|split-monic|regular-epic|regular-monic|preinjective|injective|surjective|"
                    "peric|exists-morphism")
      ->required();
  check->add_option("files", c_files, ".bmap file (two .shift files for exists-morphism)")->required();
  check->add_option("--category", category_s, "Category tag, e.g. K3")->required();
  check->add_option("--p-cap", caps.p_cap, "Largest period for the strong periodic point condition");
  check->add_option("--radius-cap", caps.radius_cap, "Largest section/retraction radius searched");
  check->add_option("--window-cap", caps.window_cap, "Largest SFT window searched");
  check->add_option("--cert", c_cert, "Write a certificate map to this .bmap file");
  add_json(check);

  // coeq-id
  auto* coeq = app.add_subcommand("coeq-id", "Coequalizer of f and the identity");
  std::string q_file, q_out;
  CoequalizerCaps qcaps;
  coeq->add_option("file", q_file, ".bmap endomorphism")->required();
  coeq->add_option("--category", category_s, "Category tag, e.g. K3")->required();
  coeq->add_option("--window-cap", qcaps.window_cap, "Largest local-equivalence window");
  coeq->add_option("--level-cap", qcaps.level_cap, "Largest chain-transitivity level");
  coeq->add_option("-o,--output", q_out, "Write the quotient map to this .bmap file");
  add_json(coeq);

  // dynamics
  auto* dyn = app.add_subcommand("dynamics", "Dynamical report for an endomorphism");
  std::string d_file;
  int d_cap = 32, d_levels = 3;
  std::vector<std::string> d_blocking;
  dyn->add_option("file", d_file, ".bmap endomorphism")->required();
  dyn->add_option("--cap", d_cap, "Largest power examined for eventual periodicity");
  dyn->add_option("--levels", d_levels, "Chain-transitivity levels reported");
  dyn->add_option("--blocking", d_blocking, "Words of one length to test as a visibly blocking set");
  add_json(dyn);

  // oracle
  auto* orc = app.add_subcommand("oracle", "Brute-force reference computations");
  orc->require_subcommand(1);
  auto* census = orc->add_subcommand("census", "Engine against brute force on all endomorphisms of a full shift");
  int o_radius = 1, o_alpha = 2;
  std::string o_checks = "epic,injective,monic,preinjective,regular-monic", o_out;
  census->add_option("--radius", o_radius, "Radius of the enumerated maps");
  census->add_option("--alphabet", o_alpha, "Alphabet size of the full shift");
  census->add_option("--check", o_checks, "Comma-separated properties");
  census->add_option("-o,--output", o_out, "Write the CSV here instead of stdout");
  add_json(census);
  auto* decide = orc->add_subcommand("decide", "Brute-force decision of one property");
  std::string od_prop, od_file;
  oracle::Bounds ob;
  decide->add_option("property", od_prop, "epic|injective|per-injective|preinjective|split-epic|monic|regular-monic")->required();
  decide->add_option("file", od_file, ".bmap file")->required();
  decide->add_option("--period", ob.period, "Period bound");
  decide->add_option("--section-radius", ob.section_radius, "Section radius bound");
  add_json(decide);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseExit;
  }

  try {
    if (auto b = env_budget()) {
      caps.node_budget = *b;
      caps.state_budget = static_cast<std::size_t>(*b);
      ob.budget = *b;
    }
    auto cat = [&]() { return CategoryTag::parse(category_s); };
    if (*analyze) return cmd_analyze(ctx, a_file, a_periods);
    if (*build) return cmd_build(ctx, b_op, b_inputs, cat(), b_out, b_window);
    if (*check) return cmd_check(ctx, c_prop, c_files, cat(), caps, c_cert);
    if (*coeq) return cmd_coeq(ctx, q_file, cat(), qcaps, q_out);
    if (*dyn) return cmd_dynamics(ctx, d_file, d_cap, d_levels, d_blocking, env_budget().value_or(1u << 20));
    if (*census) return cmd_census(ctx, o_radius, o_alpha, o_checks, o_out);
    if (*decide) return cmd_oracle_decide(ctx, od_prop, od_file, ob);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseExit;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationExit;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExit;
  }
  return kParseExit;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace sdcat
