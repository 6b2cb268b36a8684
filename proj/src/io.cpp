#include "sdcat/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "sdcat/errors.hpp"

namespace sdcat {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

struct Line {
  int number;
  std::string key;
  std::string value;
};

std::vector<Line> key_lines(std::string_view text, const std::string& origin) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    std::string line = trim(raw);
    // Whole-line comments only, so '#' stays usable as a symbol.
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(origin + ":" + std::to_string(no) + ": expected 'key: value'");
    out.push_back({no, trim(line.substr(0, colon)), trim(line.substr(colon + 1))});
  }
  return out;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

std::string compact(const Alphabet& a, const Word& w) {
  std::string s;
  for (int x : w) s += a.token(x);
  return s;
}

ShiftPtr parse_shift(std::string_view text, const std::string& origin) {
  auto lines = key_lines(text, origin);
  std::optional<Alphabet> alpha;
  std::string kind;
  std::vector<std::string> forbidden, allowed, nodes;
  std::vector<std::pair<int, std::vector<std::string>>> edges;
  std::string regex;
  std::optional<std::pair<int, std::string>> point;
  for (const auto& l : lines) {
    if (l.key == "alphabet") {
      if (alpha) fail(origin, l.number, "duplicate alphabet");
      auto toks = split_ws(l.value);
      if (toks.empty()) fail(origin, l.number, "empty alphabet");
      try {
        alpha = Alphabet(toks);
      } catch (const ValidationError& e) {
        fail(origin, l.number, e.what());
      }
    } else if (l.key == "kind") {
      kind = l.value;
      if (kind != "sft" && kind != "graph" && kind != "regex") fail(origin, l.number, "unknown kind '" + kind + "'");
    } else if (l.key == "forbidden") {
      for (auto& t : split_ws(l.value)) forbidden.push_back(t);
    } else if (l.key == "allowed") {
      for (auto& t : split_ws(l.value)) allowed.push_back(t);
    } else if (l.key == "node") {
      for (auto& t : split_ws(l.value)) nodes.push_back(t);
    } else if (l.key == "edge") {
      auto t = split_ws(l.value);
      if (t.size() != 3) fail(origin, l.number, "edge needs 'from to label'");
      edges.push_back({l.number, t});
    } else if (l.key == "regex") {
      regex = l.value;
    } else if (l.key == "point") {
      point = {l.number, l.value};
    } else {
      fail(origin, l.number, "unknown key '" + l.key + "'");
    }
  }
  if (!alpha) throw ParseError(origin + ": missing alphabet");
  if (kind.empty()) kind = !edges.empty() || !nodes.empty() ? "graph" : (!regex.empty() ? "regex" : "sft");
  std::optional<int> pt;
  if (point) {
    pt = alpha->index(point->second);
    if (*pt < 0) fail(origin, point->first, "unknown point symbol '" + point->second + "'");
  }
  auto word = [&](const std::string& s) {
    try {
      return alpha->parse_word(s);
    } catch (const ParseError& e) {
      throw ParseError(origin + ": " + e.what());
    }
  };
  if (kind == "sft") {
    if (!edges.empty() || !nodes.empty() || !regex.empty()) throw ParseError(origin + ": graph/regex keys in sft");
    if (!allowed.empty()) {
      if (!forbidden.empty()) throw ParseError(origin + ": both allowed and forbidden given");
      std::vector<Word> ws;
      for (auto& s : allowed) ws.push_back(word(s));
      int m = static_cast<int>(ws.front().size());
      for (auto& w : ws)
        if (static_cast<int>(w.size()) != m) throw ParseError(origin + ": allowed blocks differ in length");
      return Shift::from_allowed(*alpha, m, ws, pt);
    }
    std::vector<Word> ws;
    for (auto& s : forbidden) ws.push_back(word(s));
    return Shift::from_forbidden(*alpha, ws, pt);
  }
  if (kind == "regex") {
    if (regex.empty()) throw ParseError(origin + ": regex kind needs a regex line");
    try {
      return Shift::from_regex(*alpha, regex, pt);
    } catch (const ParseError& e) {
      throw ParseError(origin + ": " + e.what());
    }
  }
  std::map<std::string, int> ids;
  for (auto& n : nodes)
    if (!ids.emplace(n, static_cast<int>(ids.size())).second) throw ParseError(origin + ": duplicate node '" + n + "'");
  std::vector<std::string> names(nodes);
  LabeledGraph g;
  g.k = alpha->size();
  auto node_id = [&](const std::string& n) {
    auto [it, ins] = ids.emplace(n, static_cast<int>(ids.size()));
    if (ins) names.push_back(n);
    return it->second;
  };
  for (auto& [no, t] : edges) {
    int from = node_id(t[0]);
    int to = node_id(t[1]);
    int lab = alpha->index(t[2]);
    if (lab < 0) fail(origin, no, "edge label '" + t[2] + "' not in the alphabet");
    g.edges.push_back({from, to, lab});
  }
  g.n = static_cast<int>(ids.size());
  return Shift::from_graph(*alpha, std::move(g), std::move(names), pt);
}

ShiftPtr load_shift(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_shift(ss.str(), path.string());
}

std::string format_shift(const Shift& x) {
  std::ostringstream out;
  out << "alphabet:";
  for (const auto& t : x.alphabet().tokens()) out << ' ' << t;
  out << '\n';
  if (x.kind() == ShiftKind::Forbidden) {
    out << "kind: sft\n";
    if (!x.forbidden().empty()) {
      out << "forbidden:";
      for (const auto& w : x.forbidden()) out << ' ' << compact(x.alphabet(), w);
      out << '\n';
    }
  } else {
    out << "kind: graph\n";
    const auto& g = x.raw_graph();
    const auto& names = x.node_names();
    if (g.n) {
      out << "node:";
      for (int v = 0; v < g.n; ++v) out << ' ' << names[v];
      out << '\n';
    }
    for (const auto& e : g.edges)
      out << "edge: " << names[e.from] << ' ' << names[e.to] << ' ' << x.alphabet().token(e.label) << '\n';
  }
  if (x.point()) out << "point: " << x.alphabet().token(*x.point()) << '\n';
  return out.str();
}

void save_shift(const Shift& x, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << format_shift(x);
}

BlockMap parse_bmap(std::string_view text, const std::filesystem::path& base_dir, const std::string& origin) {
  auto lines = key_lines(text, origin);
  std::string src, dst;
  std::optional<int> radius;
  std::vector<std::pair<int, std::string>> rules;
  std::optional<std::pair<int, std::string>> def;
  for (const auto& l : lines) {
    if (l.key == "source") {
      src = l.value;
    } else if (l.key == "target") {
      dst = l.value;
    } else if (l.key == "radius") {
      try {
        std::size_t used = 0;
        radius = std::stoi(l.value, &used);
        if (used != l.value.size() || *radius < 0) throw std::invalid_argument("radius");
      } catch (const std::exception&) {
        fail(origin, l.number, "bad radius '" + l.value + "'");
      }
    } else if (l.key == "rule") {
      rules.push_back({l.number, l.value});
    } else if (l.key == "default") {
      def = {l.number, l.value};
    } else {
      fail(origin, l.number, "unknown key '" + l.key + "'");
    }
  }
  if (src.empty() || dst.empty()) throw ParseError(origin + ": source and target are required");
  if (!radius) throw ParseError(origin + ": radius is required");
  auto sp = base_dir / src, tp = base_dir / dst;
  ShiftPtr s = load_shift(sp);
  ShiftPtr t = std::filesystem::equivalent(sp, tp) ? s : load_shift(tp);
  std::map<Word, int> table;
  for (auto& [no, r] : rules) {
    auto arrow = r.find("->");
    if (arrow == std::string::npos) fail(origin, no, "rule needs 'word -> symbol'");
    std::string lhs = trim(r.substr(0, arrow)), rhs = trim(r.substr(arrow + 2));
    Word w;
    try {
      w = s->alphabet().parse_word(lhs);
    } catch (const ParseError& e) {
      fail(origin, no, e.what());
    }
    int v = t->alphabet().index(rhs);
    if (v < 0) fail(origin, no, "rule value '" + rhs + "' not in the target alphabet");
    if (!table.emplace(w, v).second) fail(origin, no, "duplicate rule for '" + lhs + "'");
  }
  std::optional<int> dv;
  if (def) {
    dv = t->alphabet().index(def->second);
    if (*dv < 0) fail(origin, def->first, "default '" + def->second + "' not in the target alphabet");
  }
  return BlockMap::from_rules(s, t, *radius, table, dv);
}

BlockMap load_bmap(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_bmap(ss.str(), base, path.string());
}

std::string format_bmap(const BlockMap& f, const std::string& source_ref, const std::string& target_ref) {
  std::ostringstream out;
  out << "source: " << source_ref << '\n' << "target: " << target_ref << '\n' << "radius: " << f.radius() << '\n';
  for (int i = 0; i < f.domain().size(); ++i)
    out << "rule: " << compact(f.source()->alphabet(), f.domain().word(i)) << " -> "
        << f.target()->alphabet().token(f.rule()[i]) << '\n';
  return out.str();
}

void save_bmap(const BlockMap& f, const std::filesystem::path& path) {
  auto dir = path.parent_path();
  auto stem = path.stem().string();
  std::string sref, tref;
  if (f.source() == f.target()) {
    sref = tref = stem + ".obj.shift";
    save_shift(*f.source(), dir / sref);
  } else {
    sref = stem + ".src.shift";
    tref = stem + ".dst.shift";
    save_shift(*f.source(), dir / sref);
    save_shift(*f.target(), dir / tref);
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << format_bmap(f, sref, tref);
}

}  // namespace sdcat
