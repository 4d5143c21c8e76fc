#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <regex>
#include <set>

#include "algebroid/classify.hpp"
#include "algebroid/deform.hpp"
#include "algebroid/determinacy.hpp"
#include "algebroid/estype.hpp"
#include "algebroid/hncurve.hpp"
#include "algebroid/localalg.hpp"

namespace algebroid::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kCommands = {"hn", "estype", "invariants", "determinacy", "classify", "deform", "fdtest"};
const std::set<std::string> kOptions = {"precision", "kmax", "jet", "seed", "samples", "valuemap", "vars", "flavor"};
constexpr const char* kUndetermined = "infinite-or-undetermined";

struct Segment {
  std::string text;
  std::size_t offset;
};

std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

// Pieces of `text` separated by any character of `seps` at bracket depth 0.
std::vector<Segment> split_top(std::string_view text, std::string_view seps, std::size_t base = 0) {
  std::vector<Segment> out;
  int depth = 0;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    std::size_t lead = 0;
    const std::string_view piece = trim(text.substr(start, end - start), &lead);
    if (!piece.empty()) out.push_back({std::string(piece), base + start + lead});
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (depth == 0 && seps.find(c) != std::string_view::npos) {
      flush(i);
      start = i + 1;
    }
  }
  flush(text.size());
  return out;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void syntax_error(std::string_view text, std::size_t offset, const std::string& expected) {
  const auto [line, col] = line_column(text, offset);
  fail(ErrorCode::SyntaxError,
       "line " + std::to_string(line) + ", column " + std::to_string(col) + ": expected " + expected);
}

// Runs fn and prefixes the position of `offset` to any syntax error it raises.
template <class Fn>
auto at(std::string_view text, std::size_t offset, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SyntaxError) throw;
    // Inner parsers report columns relative to the item; make them absolute.
    std::string message = e.what();
    std::size_t where = offset;
    static const std::regex column(" at column ([0-9]+)");
    std::smatch m;
    if (std::regex_search(message, m, column)) {
      where = offset + std::stoul(m[1].str()) - 1;
      message = m.prefix().str() + m.suffix().str();
    }
    const auto [line, col] = line_column(text, where);
    fail(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + message);
  }
}

std::string strip_brackets(std::string_view s, char open, char close) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == open && s.back() == close) s = s.substr(1, s.size() - 2);
  return std::string(trim(s));
}

class Runner {
 public:
  Runner(const Request& r, const Overrides& o) : req_(r), ov_(o), field_(r.field) {}

  Outcome run();

 private:
  const Request& req_;
  const Overrides& ov_;
  Field field_;
  int exit_ = 0;

  const Item* option(const std::string& name) const {
    auto it = req_.options.find(name);
    return it == req_.options.end() ? nullptr : &it->second;
  }
  int int_option(const std::string& name, const std::optional<int>& flag, int fallback) const {
    if (flag) return *flag;
    const Item* it = option(name);
    if (!it) return fallback;
    try {
      return std::stoi(it->value);
    } catch (const std::exception&) {
      syntax_error(req_.text, it->offset, "an integer for '" + name + "'");
    }
  }
  std::optional<std::string> str_option(const std::string& name, const std::optional<std::string>& flag) const {
    if (flag) return flag;
    if (const Item* it = option(name)) return it->value;
    return std::nullopt;
  }
  int precision() const { return int_option("precision", ov_.precision, kExact); }
  int kmax() const { return int_option("kmax", ov_.kmax, -1); }

  std::vector<const Item*> payload(const std::string& key) const {
    std::vector<const Item*> out;
    for (const Item& it : req_.payload)
      if (it.key == key) out.push_back(&it);
    return out;
  }
  const Item& single(const std::string& key) const {
    const auto items = payload(key);
    if (items.size() != 1) syntax_error(req_.text, req_.text.size(), "exactly one '" + key + "' item");
    return *items.front();
  }

  std::vector<std::string> vars_option() const {
    std::vector<std::string> vars;
    if (const Item* it = option("vars"))
      for (const Segment& s : split_top(it->value, ",")) vars.push_back(s.text);
    return vars;
  }
  // A list of series sharing one variable list (given, or the union of the names used).
  std::vector<Series> series_list(const std::vector<Segment>& texts, int prec) const {
    std::vector<std::string> vars = vars_option();
    if (vars.empty()) {
      std::set<std::string> names;
      for (const Segment& s : texts) {
        const Series probe = at(req_.text, s.offset, [&] { return Series::parse(s.text, field_); });
        names.insert(probe.vars().begin(), probe.vars().end());
      }
      vars.assign(names.begin(), names.end());
    }
    std::vector<Series> out;
    for (const Segment& s : texts)
      out.push_back(at(req_.text, s.offset, [&] { return Series::parse(s.text, field_, vars, prec); }));
    return out;
  }
  Series series_item(const Item& it) const { return series_list({{it.value, value_offset(it)}}, precision()).front(); }
  std::size_t value_offset(const Item& it) const {
    const std::size_t pos = req_.text.find(it.value, it.offset);
    return pos == std::string::npos ? it.offset : pos;
  }

  Parametrization branch(const Item& it) const {
    std::string xs, ys;
    for (const Segment& s : split_top(it.value, ",", value_offset(it))) {
      const auto eq = s.text.find('=');
      if (eq == std::string::npos) syntax_error(req_.text, s.offset, "'x = <series>' or 'y = <series>'");
      const std::string key(trim(std::string_view(s.text).substr(0, eq)));
      const std::string val(trim(std::string_view(s.text).substr(eq + 1)));
      if (key == "x") {
        xs = val;
      } else if (key == "y") {
        ys = val;
      } else {
        syntax_error(req_.text, s.offset, "'x' or 'y'");
      }
    }
    if (xs.empty() || ys.empty()) syntax_error(req_.text, it.offset, "a branch with both x and y");
    return at(req_.text, it.offset, [&] { return Parametrization::parse(xs, ys, field_, precision()); });
  }

  Elem element(const Segment& s) const {
    const Series c = at(req_.text, s.offset, [&] { return Series::parse(s.text, field_); });
    if (c.nvars() != 0) syntax_error(req_.text, s.offset, "a field element");
    return c.coeff(Exponent{});
  }

  json invariants_json(const Series& f, DimResult& mu, DimResult& tau) const;
  json cmd_hn();
  json cmd_estype();
  json cmd_invariants();
  json cmd_determinacy();
  json cmd_classify();
  json cmd_deform();
  json cmd_fdtest();
};

json dim_json(const DimResult& d) { return d.finite ? json(d.value) : json(kUndetermined); }

json colength_json(const Colength& c) {
  json j;
  j["kind"] = c.kind == Colength::Kind::Finite ? "finite" : c.kind == Colength::Kind::Infinite ? "infinite" : "undetermined";
  j["value"] = c.kind == Colength::Kind::Finite ? json(c.value) : json(nullptr);
  j["kReached"] = c.k_reached;
  return j;
}

json Runner::invariants_json(const Series& f, DimResult& mu, DimResult& tau) const {
  json j;
  const Order o = f.ord();
  if (o.infinite) fail(ErrorCode::InvalidArgument, "the series is zero to its precision");
  j["ord"] = o.value;
  mu = milnor(f, kmax());
  tau = tjurina(f, kmax());
  j["mu"] = dim_json(mu);
  j["tau"] = dim_json(tau);
  if (mu.finite) j["rightBound"] = right_bound(f, kmax());
  if (tau.finite) j["contactBound"] = contact_bound(f, kmax());
  return j;
}

json Runner::cmd_hn() {
  const Parametrization p = branch(single("branch"));
  const int wp = precision() == kExact ? 32 : precision();
  const HNExpansion h = hn_expand(p, wp);
  json j;
  auto rows_json = [](const HNExpansion& e) {
    json rows = json::array();
    for (const HNRow& r : e.rows) {
      json c = json::array();
      for (const Elem& a : r.coeffs) c.push_back(a.to_string());
      rows.push_back({{"h", r.h}, {"coeffs", c}});
    }
    return rows;
  };
  j["rows"] = rows_json(h);
  j["final"] = h.final_series.to_string();
  j["lines"] = h.to_lines();
  j["swapped"] = h.swapped;
  if (auto vm = str_option("valuemap", std::nullopt)) {
    HNExpansion model;
    if (*vm == "default") {
      model = complex_model(h);
    } else if (*vm == "random") {
      std::mt19937_64 rng(ov_.seed.value_or(1));
      std::map<std::string, mpq_class> chosen;
      model = complex_model(h, [&](const Elem& a) -> mpq_class {
        if (a.is_zero()) return 0;
        auto [it, fresh] = chosen.try_emplace(a.to_string(), 0);
        if (fresh) it->second = static_cast<long>(rng() % 9) + 1;
        return it->second;
      });
    } else {
      syntax_error(req_.text, option("valuemap")->offset, "'default' or 'random'");
    }
    j["complexModel"] = {{"rows", rows_json(model)}, {"lines", model.to_lines()}};
  }
  return j;
}

json Runner::cmd_estype() {
  std::vector<Parametrization> branches;
  for (const Item* it : payload("branch")) branches.push_back(branch(*it));
  if (branches.empty()) syntax_error(req_.text, req_.text.size(), "at least one 'branch' item");
  const EsType es = es_type(branches);
  json j;
  j["branches"] = es.sequences;
  json inter = json::array(), chars = json::array();
  for (std::size_t a = 0; a < branches.size(); ++a) {
    chars.push_back(char_exponents(es.sequences[a]));
    for (std::size_t b = a + 1; b < branches.size(); ++b) inter.push_back({a, b, es.intersections[a][b]});
  }
  j["intersections"] = inter;
  j["charExponents"] = chars;
  j["goodChar"] = good_characteristic(branches, field_);
  return j;
}

json Runner::cmd_invariants() {
  DimResult mu, tau;
  return invariants_json(series_item(single("f")), mu, tau);
}

json Runner::cmd_determinacy() {
  const Series f = series_item(single("f"));
  DimResult mu, tau;
  json j = invariants_json(f, mu, tau);
  const std::string flavor = str_option("flavor", std::nullopt).value_or("contact");
  if (flavor != "contact" && flavor != "right") syntax_error(req_.text, option("flavor")->offset, "'contact' or 'right'");
  const TangentImage t = tangent_image(f, flavor == "right" ? Flavor::Right : Flavor::Contact);
  std::vector<int> jets;
  if (auto list = str_option("jet", ov_.jet)) {
    for (const Segment& s : split_top(*list, ",")) {
      try {
        jets.push_back(std::stoi(s.text));
      } catch (const std::exception&) {
        syntax_error(req_.text, option("jet") ? option("jet")->offset : 0, "a list of jet degrees");
      }
    }
  } else if (tau.finite) {
    jets.push_back(contact_bound(f, kmax()));
  }
  json dims = json::object();
  for (int k : jets) dims[std::to_string(k)] = jet_image_dim(t, k);
  j["tangentImageJetDims"] = dims;
  j["flavor"] = flavor;
  j["verdicts"] = {{"finiteContactDeterminacy", tau.finite ? "finite" : kUndetermined},
                   {"finiteRightDeterminacy", mu.finite ? "finite" : kUndetermined}};
  return j;
}

json Runner::cmd_classify() {
  const Series f = series_item(single("f"));
  const ClassificationVerdict v = classify(f, kmax());
  json j;
  j["contactSimple"] = v.contact_simple;
  j["rightSimple"] = v.right_simple;
  j["contactDetermined"] = v.contact_determined;
  j["infiniteTjurina"] = v.infinite_tjurina;
  const bool simple = v.cls.simple();
  j["family"] = simple ? json(std::string(1, v.cls.family)) : json(nullptr);
  j["index"] = simple ? json(v.cls.index) : json(nullptr);
  j["subtype"] = simple ? json(v.cls.subtype.empty() ? "Unspecified" : v.cls.subtype) : json(nullptr);
  j["name"] = v.contact_determined ? v.cls.name() : "undetermined";
  json ev;
  ev["ord"] = v.evidence.ord;
  ev["tau"] = dim_json(v.evidence.tau);
  ev["mu"] = dim_json(v.evidence.mu);
  ev["squares"] = v.evidence.squares;
  ev["corank"] = v.cls.corank;
  ev["charExponents"] = v.evidence.char_exponents.empty() ? json(nullptr) : json(v.evidence.char_exponents);
  if (v.evidence.branches >= 0) {
    ev["delta"] = v.evidence.delta;
    ev["branches"] = v.evidence.branches;
  }
  ev["conditionsChecked"] = v.evidence.conditions;
  j["evidence"] = ev;
  if (!v.contact_determined) exit_ = 2;
  return j;
}

json Runner::cmd_deform() {
  if (const auto path = payload("pathology"); !path.empty()) {
    const Item& it = *path.front();
    std::uint64_t p = 0;
    try {
      p = std::stoull(it.value);
    } catch (const std::exception&) {
      syntax_error(req_.text, it.offset, "a prime after 'pathology'");
    }
    const WitnessTable t = pathology_family(p);
    json j;
    std::vector<std::string> params;
    for (const Elem& e : t.params) params.push_back(e.to_string());
    std::vector<std::vector<int>> w;
    for (const auto& row : t.found) w.emplace_back(row.begin(), row.end());
    j["family"] = "x^" + std::to_string(t.a) + "+t*x^" + std::to_string(t.b);
    j["field"] = t.field.spec();
    j["jet"] = t.k;
    j["params"] = params;
    j["witnesses"] = w;
    j["diagonalOnly"] = t.diagonal_only();
    j["note"] = t.note;
    return j;
  }
  const Item &xi = single("X"), &yi = single("Y");
  std::set<std::string> names;
  for (const Item* it : {&xi, &yi}) {
    const Series probe = at(req_.text, it->offset, [&] { return Series::parse(it->value, field_); });
    names.insert(probe.vars().begin(), probe.vars().end());
  }
  names.erase("z");
  std::vector<std::string> vars = {"z"};
  vars.insert(vars.end(), names.begin(), names.end());
  const ParamFamily fam(at(req_.text, xi.offset, [&] { return Series::parse(xi.value, field_, vars); }),
                        at(req_.text, yi.offset, [&] { return Series::parse(yi.value, field_, vars); }));

  std::vector<std::vector<Elem>> points;
  if (auto s = str_option("samples", ov_.samples)) {
    for (const Segment& p : split_top(*s, ",")) {
      std::vector<Elem> point;
      for (const Segment& c : split_top(strip_brackets(p.text, '(', ')'), ",")) point.push_back(element(c));
      points.push_back(point);
    }
  } else if (fam.nparams() == 0) {
    points.push_back({});
  } else {
    points.push_back(std::vector<Elem>(fam.nparams(), field_.zero()));
  }

  const int N = precision() == kExact ? 12 : precision();
  const Series F = eliminate_parameter(fam, kExact);
  const EsSampleReport r = es_constancy_sample(fam, points);
  auto fiber_json = [](const FiberEs& s) {
    std::vector<std::string> point;
    for (const Elem& e : s.point) point.push_back(e.to_string());
    return json{{"point", point}, {"multiplicities", s.multiplicities}, {"charExponents", s.char_exponents},
                {"agrees", s.agrees}};
  };
  json j;
  j["variables"] = vars;
  j["equation"] = F.truncated(N).to_string();
  j["precision"] = N;
  j["constant"] = r.constant;
  j["note"] = r.note;
  j["special"] = fiber_json(r.special);
  json samples = json::array();
  for (const FiberEs& s : r.samples) {
    json sj = fiber_json(s);
    sj["contract"] = specialization_contract(fam, F, s.point, N - 2);
    samples.push_back(sj);
  }
  j["samples"] = samples;
  return j;
}

json Runner::cmd_fdtest() {
  json j;
  if (const auto ideal = payload("ideal"); !ideal.empty()) {
    const Item& it = *ideal.front();
    const IdealFdResult r = fd_test_ideal(series_list(split_top(it.value, ",", value_offset(it)), precision()), kmax());
    j["kind"] = "ideal";
    j["verdict"] = to_string(r.verdict);
    j["evidence"] = colength_json(r.evidence);
    if (r.evidence.kind == Colength::Kind::Undetermined) exit_ = 2;
    return j;
  }
  const Item& it = single("matrix");
  const std::vector<Segment> rows = split_top(strip_brackets(it.value, '[', ']'), ",", value_offset(it));
  std::vector<Segment> cells;
  std::vector<std::size_t> widths;
  for (const Segment& row : rows) {
    const auto entries = split_top(strip_brackets(row.text, '[', ']'), ",", row.offset);
    widths.push_back(entries.size());
    cells.insert(cells.end(), entries.begin(), entries.end());
  }
  if (rows.empty() || std::adjacent_find(widths.begin(), widths.end(), std::not_equal_to<>()) != widths.end())
    syntax_error(req_.text, it.offset, "a rectangular matrix [[a, b], [c, d]]");
  const std::vector<Series> flat = series_list(cells, precision());
  std::vector<std::vector<Series>> m;
  for (std::size_t r = 0; r < rows.size(); ++r)
    m.emplace_back(flat.begin() + static_cast<long>(r * widths[0]), flat.begin() + static_cast<long>((r + 1) * widths[0]));
  const SeriesMatrix a(m);
  const MatrixFdResult r = fd_test_matrix(a, kmax());
  j["kind"] = "matrix";
  j["verdict"] = to_string(r.verdict);
  j["transposed"] = a.transposed();
  j["codim"] = colength_json(r.codim);
  if (r.verdict == MatrixVerdict::Unknown) exit_ = 2;
  return j;
}

Outcome Runner::run() {
  json j;
  const std::string& c = req_.command;
  if (c == "hn") j = cmd_hn();
  if (c == "estype") j = cmd_estype();
  if (c == "invariants") j = cmd_invariants();
  if (c == "determinacy") j = cmd_determinacy();
  if (c == "classify") j = cmd_classify();
  if (c == "deform") j = cmd_deform();
  if (c == "fdtest") j = cmd_fdtest();
  j["schemaVersion"] = kSchemaVersion;
  j["command"] = c;
  j["field"] = field_.spec();
  return {j, exit_};
}

}  // namespace

Request parse_request(std::string_view text, const std::optional<std::string>& field_override) {
  Request req;
  req.text = std::string(text);
  const std::vector<Segment> segs = split_top(text, ";\n");
  std::size_t i = 0;
  if (segs.empty() || segs[0].text.rfind("field", 0) != 0) syntax_error(text, segs.empty() ? 0 : segs[0].offset, "'field: <spec>'");
  const std::string head = std::string(trim(std::string_view(segs[0].text).substr(5)));
  if (head.empty() || head[0] != ':') syntax_error(text, segs[0].offset + 5, "':' after 'field'");
  req.field_spec = std::string(trim(std::string_view(head).substr(1)));
  std::size_t field_offset = segs[0].offset;
  ++i;
  if (i < segs.size() && segs[i].text.rfind("ext=", 0) == 0) req.field_spec += "; " + segs[i++].text;
  if (field_override) req.field_spec = *field_override;
  req.field = at(text, field_offset, [&] { return Field::parse(req.field_spec); });

  if (i >= segs.size() || !kCommands.count(segs[i].text))
    syntax_error(text, i < segs.size() ? segs[i].offset : text.size(),
                 "a command (hn, estype, invariants, determinacy, classify, deform, fdtest)");
  req.command = segs[i++].text;

  for (; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    const std::size_t sep = s.text.find_first_of("=:");
    if (sep == std::string::npos) syntax_error(text, s.offset, "'key = value' or 'key: value'");
    Item item{std::string(trim(std::string_view(s.text).substr(0, sep))), std::string(trim(std::string_view(s.text).substr(sep + 1))),
              s.offset};
    if (item.key.empty() || !std::all_of(item.key.begin(), item.key.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
      syntax_error(text, s.offset, "an item name");
    if (kOptions.count(item.key)) {
      req.options[item.key] = item;
    } else {
      req.payload.push_back(item);
    }
  }
  return req;
}

Outcome run(const Request& request, const Overrides& overrides) { return Runner(request, overrides).run(); }

Outcome run_text(std::string_view text, const Overrides& overrides) {
  std::string context = "parse";
  try {
    const Request req = parse_request(text, overrides.field);
    context = req.command;
    return run(req, overrides);
  } catch (const Error& e) {
    const bool undetermined = e.code() == ErrorCode::UndeterminedDimension || e.code() == ErrorCode::UndeterminedSubtype;
    json j{{"schemaVersion", kSchemaVersion},
           {"error", std::string(to_string(e.code()))},
           {"message", e.what()},
           {"context", context}};
    return {j, undetermined ? 2 : 1};
  }
}

std::string render(const json& doc, bool pretty) { return pretty ? doc.dump(2) : doc.dump(); }

}  // namespace algebroid::cli
