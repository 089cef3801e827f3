#include "smc/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace smc {

ParseError::ParseError(int line, int column, const std::string& msg)
    : ValidationError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  int col = 0;
};

struct Line {
  int no = 0;
  std::vector<Token> toks;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{no, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > start) line.toks.push_back({std::string(raw.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    if (!line.toks.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

int parse_int(const Token& t, int line) {
  int v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || p != t.text.data() + t.text.size())
    throw ParseError(line, t.col, "expected an integer, got '" + t.text + "'");
  return v;
}

struct PrefLine {
  int line = 0;
  Token owner;
  std::vector<Token> items;
};

// Header keys and pref lines shared by both instance kinds.
struct RawDoc {
  std::string kind = "smc";
  std::map<std::string, Line> keyed;  // key -> line (tokens after the key)
  std::vector<PrefLine> prefs;
  std::optional<int> budget;
};

RawDoc read_raw(std::string_view text) {
  RawDoc doc;
  for (Line& line : tokenize(text)) {
    const Token& head = line.toks.front();
    if (head.text == "pref") {
      if (line.toks.size() < 2 || line.toks[1].text.back() != ':' || line.toks[1].text.size() < 2)
        throw ParseError(line.no, head.col, "expected 'pref NAME: ...'");
      PrefLine p{line.no, line.toks[1], {}};
      p.owner.text.pop_back();
      p.items.assign(line.toks.begin() + 2, line.toks.end());
      doc.prefs.push_back(std::move(p));
      continue;
    }
    if (head.text.back() != ':') throw ParseError(line.no, head.col, "expected a key ending in ':'");
    std::string key = head.text.substr(0, head.text.size() - 1);
    static const char* known[] = {"kind", "men", "women", "residents", "hospitals", "star-women", "star-men", "budget"};
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ParseError(line.no, head.col, "unknown key '" + key + "'");
    if (doc.keyed.count(key)) throw ParseError(line.no, head.col, "duplicate key '" + key + "'");
    Line rest{line.no, {line.toks.begin() + 1, line.toks.end()}};
    if (key == "kind") {
      if (rest.toks.size() != 1 || (rest.toks[0].text != "smc" && rest.toks[0].text != "hrlq"))
        throw ParseError(line.no, head.col, "kind must be 'smc' or 'hrlq'");
      doc.kind = rest.toks[0].text;
    } else if (key == "budget") {
      if (rest.toks.size() != 1) throw ParseError(line.no, head.col, "budget takes one integer");
      doc.budget = parse_int(rest.toks[0], line.no);
      if (*doc.budget < 0) throw ParseError(line.no, rest.toks[0].col, "budget must be nonnegative");
    }
    doc.keyed.emplace(key, std::move(rest));
  }
  return doc;
}

using NameIndex = std::unordered_map<std::string, int>;

NameIndex index_names(const Line& line, std::vector<std::string>& names) {
  NameIndex idx;
  for (const Token& t : line.toks) {
    if (t.text.back() == ':') throw ParseError(line.no, t.col, "invalid name '" + t.text + "'");
    if (!idx.emplace(t.text, static_cast<int>(names.size())).second)
      throw ParseError(line.no, t.col, "duplicate name '" + t.text + "'");
    names.push_back(t.text);
  }
  return idx;
}

const Line& need(const RawDoc& doc, const std::string& key) {
  auto it = doc.keyed.find(key);
  if (it == doc.keyed.end()) throw ParseError(1, 1, "missing '" + key + ":' line");
  return it->second;
}

int resolve(const NameIndex& idx, const Token& t, int line) {
  auto it = idx.find(t.text);
  if (it == idx.end()) throw ParseError(line, t.col, "unknown name '" + t.text + "'");
  return it->second;
}

// Assigns pref lines to the two sides; returns lists indexed by person.
void fill_prefs(const RawDoc& doc, const NameIndex& left, const NameIndex& right, std::vector<PrefList>& lists_left,
                std::vector<PrefList>& lists_right) {
  std::vector<char> seen_left(lists_left.size(), 0), seen_right(lists_right.size(), 0);
  for (const PrefLine& p : doc.prefs) {
    bool is_left = left.count(p.owner.text) > 0;
    bool is_right = right.count(p.owner.text) > 0;
    if (!is_left && !is_right) throw ParseError(p.line, p.owner.col, "unknown name '" + p.owner.text + "'");
    const NameIndex& own = is_left ? left : right;
    const NameIndex& other = is_left ? right : left;
    int who = own.at(p.owner.text);
    auto& seen = is_left ? seen_left : seen_right;
    if (seen[who]) throw ParseError(p.line, p.owner.col, "second pref line for '" + p.owner.text + "'");
    seen[who] = 1;
    PrefList& dst = is_left ? lists_left[who] : lists_right[who];
    std::vector<char> dup(is_left ? lists_right.size() : lists_left.size(), 0);
    for (const Token& t : p.items) {
      int x = resolve(other, t, p.line);
      if (dup[x]) throw ParseError(p.line, t.col, "duplicate entry '" + t.text + "'");
      dup[x] = 1;
      dst.push_back(x);
    }
  }
}

void check_mutual(const std::vector<PrefList>& left, const std::vector<PrefList>& right,
                  const std::vector<std::string>& left_names, const std::vector<std::string>& right_names) {
  for (std::size_t a = 0; a < left.size(); ++a)
    for (int b : left[a]) {
      bool back = false;
      for (int x : right[b]) back = back || x == static_cast<int>(a);
      if (!back)
        throw ValidationError("acceptability not mutual: " + left_names[a] + " lists " + right_names[b] + " but " +
                              right_names[b] + " does not list " + left_names[a]);
    }
  for (std::size_t b = 0; b < right.size(); ++b)
    for (int a : right[b]) {
      bool back = false;
      for (int x : left[a]) back = back || x == static_cast<int>(b);
      if (!back)
        throw ValidationError("acceptability not mutual: " + right_names[b] + " lists " + left_names[a] + " but " +
                              left_names[a] + " does not list " + right_names[b]);
    }
}

SmcInstance build_smc(const RawDoc& doc) {
  for (const char* k : {"residents", "hospitals"})
    if (doc.keyed.count(k)) throw ParseError(doc.keyed.at(k).no, 1, std::string("'") + k + ":' is only valid for kind hrlq");
  std::vector<std::string> men_names, women_names;
  NameIndex men = index_names(need(doc, "men"), men_names);
  NameIndex women = index_names(need(doc, "women"), women_names);
  for (const auto& [name, idx] : men)
    if (women.count(name)) throw ParseError(need(doc, "women").no, 1, "name '" + name + "' used on both sides");
  std::vector<PrefList> ml(men_names.size()), wl(women_names.size());
  fill_prefs(doc, men, women, ml, wl);
  check_mutual(ml, wl, men_names, women_names);
  std::vector<int> sw, sm;
  if (auto it = doc.keyed.find("star-women"); it != doc.keyed.end())
    for (const Token& t : it->second.toks) sw.push_back(resolve(women, t, it->second.no));
  if (auto it = doc.keyed.find("star-men"); it != doc.keyed.end())
    for (const Token& t : it->second.toks) sm.push_back(resolve(men, t, it->second.no));
  SmcInstance inst(std::move(ml), std::move(wl), std::move(sw), std::move(sm), doc.budget);
  inst.set_names(std::move(men_names), std::move(women_names));
  return inst;
}

HrlqInstance build_hrlq(const RawDoc& doc) {
  for (const char* k : {"men", "women", "star-women", "star-men"})
    if (doc.keyed.count(k)) throw ParseError(doc.keyed.at(k).no, 1, std::string("'") + k + ":' is only valid for kind smc");
  std::vector<std::string> res_names, hosp_names;
  NameIndex residents = index_names(need(doc, "residents"), res_names);
  const Line& hl = need(doc, "hospitals");
  NameIndex hospitals;
  std::vector<Hospital> hs;
  for (const Token& t : hl.toks) {
    auto open = t.text.find('[');
    auto comma = t.text.find(',', open == std::string::npos ? 0 : open);
    if (open == std::string::npos || open == 0 || comma == std::string::npos || t.text.back() != ']')
      throw ParseError(hl.no, t.col, "expected hospital as name[lower,upper], got '" + t.text + "'");
    std::string name = t.text.substr(0, open);
    Token lo{t.text.substr(open + 1, comma - open - 1), t.col + static_cast<int>(open) + 1};
    Token up{t.text.substr(comma + 1, t.text.size() - comma - 2), t.col + static_cast<int>(comma) + 1};
    Hospital h;
    h.lower = parse_int(lo, hl.no);
    h.upper = parse_int(up, hl.no);
    if (h.lower < 0 || h.upper < 1 || h.lower > h.upper)
      throw ParseError(hl.no, t.col, "quotas of '" + name + "' must satisfy 0 <= lower <= upper, upper >= 1");
    if (!hospitals.emplace(name, static_cast<int>(hosp_names.size())).second)
      throw ParseError(hl.no, t.col, "duplicate name '" + name + "'");
    hosp_names.push_back(name);
    hs.push_back(h);
  }
  for (const auto& [name, idx] : residents)
    if (hospitals.count(name)) throw ParseError(hl.no, 1, "name '" + name + "' used on both sides");
  std::vector<PrefList> rl(res_names.size()), hl_lists(hosp_names.size());
  fill_prefs(doc, residents, hospitals, rl, hl_lists);
  check_mutual(rl, hl_lists, res_names, hosp_names);
  for (std::size_t h = 0; h < hs.size(); ++h) hs[h].prefs = hl_lists[h];
  HrlqInstance inst(std::move(rl), std::move(hs), doc.budget);
  inst.set_names(std::move(res_names), std::move(hosp_names));
  return inst;
}

void append_names(std::ostringstream& out, const std::vector<std::string>& names, const PrefList& ids) {
  for (int i : ids) out << ' ' << names[i];
}

}  // namespace

Document parse_document(std::string_view text) {
  RawDoc doc = read_raw(text);
  if (doc.kind == "hrlq") return build_hrlq(doc);
  return build_smc(doc);
}

SmcInstance parse_smc(std::string_view text) {
  Document d = parse_document(text);
  if (!std::holds_alternative<SmcInstance>(d)) throw ValidationError("expected an smc instance");
  return std::get<SmcInstance>(std::move(d));
}

HrlqInstance parse_hrlq(std::string_view text) {
  Document d = parse_document(text);
  if (!std::holds_alternative<HrlqInstance>(d)) throw ValidationError("expected an hrlq instance");
  return std::get<HrlqInstance>(std::move(d));
}

std::string serialize(const SmcInstance& inst) {
  std::ostringstream out;
  out << "kind: smc\nmen:";
  for (const auto& n : inst.man_names()) out << ' ' << n;
  out << "\nwomen:";
  for (const auto& n : inst.woman_names()) out << ' ' << n;
  out << '\n';
  for (int m = 0; m < inst.num_men(); ++m) {
    out << "pref " << inst.man_name(m) << ':';
    append_names(out, inst.woman_names(), inst.man_list(m));
    out << '\n';
  }
  for (int w = 0; w < inst.num_women(); ++w) {
    out << "pref " << inst.woman_name(w) << ':';
    append_names(out, inst.man_names(), inst.woman_list(w));
    out << '\n';
  }
  out << "star-women:";
  append_names(out, inst.woman_names(), inst.star_women());
  out << "\nstar-men:";
  append_names(out, inst.man_names(), inst.star_men());
  out << '\n';
  if (inst.budget()) out << "budget: " << *inst.budget() << '\n';
  return out.str();
}

std::string serialize(const HrlqInstance& inst) {
  std::ostringstream out;
  out << "kind: hrlq\nresidents:";
  for (int r = 0; r < inst.num_residents(); ++r) out << ' ' << inst.resident_name(r);
  out << "\nhospitals:";
  for (int h = 0; h < inst.num_hospitals(); ++h)
    out << ' ' << inst.hospital_name(h) << '[' << inst.hospital(h).lower << ',' << inst.hospital(h).upper << ']';
  out << '\n';
  for (int r = 0; r < inst.num_residents(); ++r) {
    out << "pref " << inst.resident_name(r) << ':';
    for (int h : inst.resident_list(r)) out << ' ' << inst.hospital_name(h);
    out << '\n';
  }
  for (int h = 0; h < inst.num_hospitals(); ++h) {
    out << "pref " << inst.hospital_name(h) << ':';
    for (int r : inst.hospital(h).prefs) out << ' ' << inst.resident_name(r);
    out << '\n';
  }
  if (inst.budget()) out << "budget: " << *inst.budget() << '\n';
  return out.str();
}

namespace {

const char* optimality_text(Optimality o) {
  switch (o) {
    case Optimality::Yes: return "yes";
    case Optimality::No: return "no";
    case Optimality::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace

std::string format_result(const SmcInstance& inst, const SolveResult& r, Optimality opt) {
  std::ostringstream out;
  for (const Edge& e : r.matching.pairs()) out << inst.man_name(e.man) << ' ' << inst.woman_name(e.woman) << '\n';
  out << "blocking: " << r.blocking.size() << '\n';
  for (const Edge& e : r.blocking) out << inst.man_name(e.man) << ' ' << inst.woman_name(e.woman) << '\n';
  out << "optimal: " << optimality_text(opt) << '\n';
  out << "feasible: " << (!r.infeasible && is_feasible(inst, r.matching) ? "yes" : "no") << '\n';
  return out.str();
}

std::string format_result(const HrlqInstance& inst, const HrlqResult& r, Optimality opt) {
  std::ostringstream out;
  for (int res = 0; res < inst.num_residents(); ++res) {
    int h = r.assignment.hospital_of_resident[res];
    if (h != kUnmatched) out << inst.resident_name(res) << ' ' << inst.hospital_name(h) << '\n';
  }
  out << "blocking: " << r.blocking.size() << '\n';
  for (const auto& [res, h] : r.blocking) out << inst.resident_name(res) << ' ' << inst.hospital_name(h) << '\n';
  out << "optimal: " << optimality_text(opt) << '\n';
  out << "feasible: " << (!r.infeasible && is_feasible_hrlq(inst, r.assignment) ? "yes" : "no") << '\n';
  return out.str();
}

namespace {

template <class Fn>
void for_pair_lines(std::string_view text, Fn&& fn) {
  for (const Line& line : tokenize(text)) {
    if (line.toks.front().text.back() == ':') {
      if (line.toks.front().text == "blocking:") break;
      continue;
    }
    if (line.toks.size() != 2) throw ParseError(line.no, line.toks.front().col, "expected a pair of names");
    fn(line);
  }
}

NameIndex name_map(const std::vector<std::string>& names) {
  NameIndex idx;
  for (std::size_t i = 0; i < names.size(); ++i) idx.emplace(names[i], static_cast<int>(i));
  return idx;
}

}  // namespace

Matching parse_matching(const SmcInstance& inst, std::string_view text) {
  NameIndex men = name_map(inst.man_names()), women = name_map(inst.woman_names());
  std::vector<Edge> pairs;
  for_pair_lines(text, [&](const Line& line) {
    pairs.push_back({resolve(men, line.toks[0], line.no), resolve(women, line.toks[1], line.no)});
  });
  Matching m = Matching::from_pairs(inst.num_men(), inst.num_women(), pairs);
  validate_matching(inst, m);
  return m;
}

Assignment parse_assignment(const HrlqInstance& inst, std::string_view text) {
  std::vector<std::string> rn, hn;
  for (int r = 0; r < inst.num_residents(); ++r) rn.push_back(inst.resident_name(r));
  for (int h = 0; h < inst.num_hospitals(); ++h) hn.push_back(inst.hospital_name(h));
  NameIndex res = name_map(rn), hosp = name_map(hn);
  Assignment a(inst.num_residents());
  for_pair_lines(text, [&](const Line& line) {
    int r = resolve(res, line.toks[0], line.no);
    if (a.hospital_of_resident[r] != kUnmatched)
      throw ParseError(line.no, line.toks[0].col, "resident '" + line.toks[0].text + "' assigned twice");
    a.hospital_of_resident[r] = resolve(hosp, line.toks[1], line.no);
  });
  validate_assignment(inst, a);
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace smc
