#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "asw/deform.hpp"
#include "asw/errors.hpp"
#include "asw/moduli.hpp"
#include "asw/parse.hpp"

namespace asw::cli {

namespace {

using Json = nlohmann::ordered_json;

// ---- input -----------------------------------------------------------------

std::string read_source(const std::string& source) {
  if (source == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (source[first] == '{' || source[first] == '[')) return source;
  std::ifstream in(source);
  if (!in) throw ParseError("cannot read '" + source + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& source) {
  try {
    return Json::parse(read_source(source));
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T get_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ParseError(std::string("bad value for \"") + key + "\"");
  }
}

std::vector<int> parse_tuple(const std::string& text) {
  std::vector<int> out;
  std::string cleaned;
  for (char c : text) cleaned += (c == '[' || c == ']' || c == '(' || c == ')') ? ' ' : c;
  std::stringstream ss(cleaned);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw ParseError("bad integer tuple '" + text + "'");
    }
    if (item.find_first_not_of(" \t", pos) != std::string::npos) throw ParseError("bad integer tuple '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty integer tuple");
  return out;
}

Field field_from_json(const Json& j, std::uint32_t p) {
  const std::string name = j.contains("field") ? get_field<std::string>(j, "field") : "F" + std::to_string(p);
  GfPoly modulus;
  if (j.contains("modulus"))
    for (long long c : get_field<std::vector<long long>>(j, "modulus")) {
      if (c < 0 || c >= static_cast<long long>(p)) throw ParseError("modulus coefficients must lie in [0, p)");
      modulus.push_back(static_cast<GfIndex>(c));
    }
  const Field f = Field::parse(name, modulus);
  if (f.characteristic() != p)
    throw ParseError("field " + name + " does not have characteristic " + std::to_string(p));
  return f;
}

WittVector witt_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("Witt vector JSON must be an object");
  const auto p = get_field<std::uint32_t>(j, "p");
  const Field f = field_from_json(j, p);
  const auto entries = get_field<std::vector<std::string>>(j, "entries");
  if (entries.empty()) throw ParseError("Witt vector has no entries");
  if (j.contains("n") && get_field<std::size_t>(j, "n") != entries.size())
    throw ParseError("\"n\" does not match the number of entries");
  std::vector<RatFunc> e;
  for (const auto& s : entries) e.push_back(parse_ratfunc(s, f));
  return WittVector(std::move(e));
}

std::vector<Row> rows_from_json(const Json& j) {
  try {
    return (j.is_object() ? j.at("rows") : j).get<std::vector<Row>>();
  } catch (const Json::exception&) {
    throw ParseError("rows must be a list of integer lists");
  }
}

BranchingDatum datum_from_arg(const std::string& text, std::uint32_t p) {
  const Json j = parse_json(text);
  if (j.is_object() && j.contains("p") && get_field<std::uint32_t>(j, "p") != p)
    throw ParseError("claimed datum has a different prime");
  return BranchingDatum(p, rows_from_json(j));
}

// ---- output ----------------------------------------------------------------

Json header(const char* command) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["command"] = command;
  return j;
}

std::string ratfunc_text(const RatFunc& f) {
  try {
    return f.to_pretty_string();
  } catch (const UnsplitPoleError&) {
    return f.to_string();
  }
}

Json entries_json(const WittVector& u) {
  Json a = Json::array();
  for (const auto& f : u.entries()) a.push_back(ratfunc_text(f));
  return a;
}

Json datum_json(const BranchingDatum& d) {
  Json j;
  j["p"] = d.p;
  j["n"] = d.n;
  j["rows"] = d.rows;
  if (d.has_points()) {
    Json pts = Json::array();
    for (const auto& P : d.points) pts.push_back(P.to_string());
    j["points"] = pts;
  }
  return j;
}

Json places_json(const std::vector<Place>& ps) {
  Json a = Json::array();
  for (const auto& P : ps) a.push_back(P.to_string());
  return a;
}

bool is_flat(const Json& j) {
  if (!j.is_array()) return j.is_primitive();
  for (const auto& e : j)
    if (!e.is_primitive()) return false;
  return true;
}

bool is_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& e : j)
    if (!e.is_array() || !is_flat(e)) return false;
  return true;
}

// Two-space indentation with scalar arrays and integer matrices kept on one line.
void write_json(std::ostream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  if (is_flat(j) || is_matrix(j)) {
    out << j.dump();
  } else if (j.is_array()) {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << pad;
      write_json(out, j[i], indent + 2);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << std::string(static_cast<std::size_t>(indent), ' ') << ']';
  } else if (j.empty()) {
    out << "{}";
  } else {
    out << "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      out << pad << Json(k).dump() << ": ";
      write_json(out, v, indent + 2);
      out << (++i < j.size() ? ",\n" : "\n");
    }
    out << std::string(static_cast<std::size_t>(indent), ' ') << '}';
  }
}

void emit(std::ostream& out, const Json& j) {
  write_json(out, j, 0);
  out << '\n';
}

std::string join(const std::vector<long long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

// ---- commands ---------------------------------------------------------------

int cmd_analyze(const std::string& input, const std::string& format, std::ostream& out) {
  const WittVector u = witt_from_json(parse_json(input));
  const BranchAnalysis a = analyze_branching(u);
  const BranchingDatum& d = a.datum;
  const auto genus = genus_vector(d);
  const PRankReport pr = p_rank_vector(d);

  Json j = header("analyze");
  j["p"] = u.prime();
  j["n"] = u.length();
  j["field"] = u.field().name();
  j["input"] = entries_json(u);
  j["reduced"] = entries_json(a.reduction.reduced);
  j["correction"] = entries_json(a.reduction.correction);
  j["datum"] = datum_json(d);
  j["canonical_rows"] = d.canonical().rows;
  j["conductors"] = d.conductors();
  Json pts = Json::array();
  for (const auto& prof : a.profile.points) {
    Json q;
    q["point"] = prof.point.to_string();
    q["jumps"] = prof.jumps;
    q["inertia_exponent"] = prof.inertia_exponent;
    q["swan"] = prof.swan;
    pts.push_back(q);
  }
  j["points"] = pts;
  j["swan_total"] = a.profile.swan_total;
  Json tr = Json::array();
  for (unsigned i = 1; i < d.n; ++i) {
    Json t;
    t["level"] = i;
    t["rows"] = truncate(d, i).canonical().rows;
    tr.push_back(t);
  }
  j["truncations"] = tr;
  j["genus"] = genus;
  j["p_rank"] = pr.sigma;
  j["inertia_counts"] = pr.inertia_counts;
  j["column_support"] = pr.column_support;

  if (format == "table") {
    out << "field " << u.field().name() << ", p = " << u.prime() << ", n = " << u.length() << '\n';
    out << "reduced:\n";
    for (unsigned i = 0; i < u.length(); ++i) out << "  f" << i + 1 << " = " << a.reduction.reduced[i] << '\n';
    out << "branching datum:\n";
    for (std::size_t r = 0; r < d.rows.size(); ++r) {
      const auto& prof = a.profile.points[r];
      std::vector<long long> jumps(prof.jumps.begin(), prof.jumps.end());
      out << "  " << d.points[r] << ": conductors " << row_string(d.rows[r]) << ", jumps (" << join(jumps)
          << "), swan (" << join(prof.swan) << ")\n";
    }
    out << "genus: (" << join(genus) << ")\n";
    out << "p-rank: (" << join(pr.sigma) << ")\n";
    return kOk;
  }
  emit(out, j);
  return kOk;
}

Json vertex_json(const PartitionVertex& v, std::size_t index) {
  Json j;
  j["index"] = index;
  j["rows"] = v.datum.rows;
  j["strata"] = v.strata;
  j["essential"] = v.essential_total;
  j["dim_cov"] = v.dim_cov;
  j["dim_curve"] = v.dim_curve;
  j["component"] = v.component;
  return j;
}

Json components_json(const std::vector<BranchingDatum>& comps) {
  Json a = Json::array();
  for (const auto& c : comps) {
    Json j;
    j["rows"] = c.rows;
    j["dim_cov"] = dim_cov(c);
    j["dim_curve"] = dim_curve(c);
    a.push_back(j);
  }
  return a;
}

Json graph_json(const PartitionGraph& g, const std::optional<std::vector<int>>& strata) {
  Json j = header("enumerate");
  j["p"] = g.p;
  j["d"] = g.d;
  j["vertex_count"] = g.vertices.size();
  j["edge_count"] = g.edges.size();
  if (strata) j["strata_filter"] = *strata;
  Json vs = Json::array();
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    if (!strata || g.vertices[i].strata == *strata) vs.push_back(vertex_json(g.vertices[i], i));
  j["vertices"] = vs;
  Json es = Json::array();
  for (const auto& [a, b] : g.edges) es.push_back(Json::array({a, b}));
  j["edges"] = es;
  std::vector<BranchingDatum> comps;
  for (std::size_t i : g.component_indices()) comps.push_back(g.vertices[i].datum);
  j["components"] = components_json(comps);
  j["components_count"] = comps.size();
  j["irreducible"] = irreducible(g.d, g.p);
  j["graph_connected"] = g.graph_connected();
  j["disconnected_criterion"] = disconnected_criterion(g.d.front(), g.p);
  j["refine_divergences"] = g.refine_divergences.size();
  return j;
}

int cmd_enumerate(const std::vector<int>& d, std::uint32_t p, const std::string& strata_arg, bool components_only,
                  bool dot, const std::string& format, unsigned jobs, std::ostream& out) {
  require_admissible(d, p);
  if (components_only) {
    const auto comps = components(d, p);
    Json j = header("enumerate");
    j["p"] = p;
    j["d"] = d;
    j["components"] = components_json(comps);
    j["components_count"] = comps.size();
    j["irreducible"] = irreducible(d, p);
    emit(out, j);
    return kOk;
  }
  const PartitionGraph g = build_graph(d, p, jobs);
  if (dot) {
    out << to_dot(g);
    return kOk;
  }
  std::optional<std::vector<int>> strata;
  if (!strata_arg.empty()) strata = parse_tuple(strata_arg);
  if (format == "table") {
    out << "Omega_" << row_string(d) << " at p = " << p << ": " << g.vertices.size() << " vertices, " << g.edges.size()
        << " edges\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
      const auto& v = g.vertices[i];
      if (strata && v.strata != *strata) continue;
      out << "  v" << i << " " << v.datum.rows_string() << " strata " << row_string(v.strata) << " dim " << v.dim_cov
          << (v.component ? " component" : "") << '\n';
    }
    out << "irreducible: " << (irreducible(d, p) ? "true" : "false") << '\n';
    return kOk;
  }
  emit(out, graph_json(g, strata));
  return kOk;
}

int cmd_components(const std::vector<int>& d, std::uint32_t p, std::ostream& out) {
  require_admissible(d, p);
  const auto comps = components(d, p);
  Json j = header("components");
  j["p"] = p;
  j["d"] = d;
  j["components"] = components_json(comps);
  j["count"] = comps.size();
  emit(out, j);
  return kOk;
}

int cmd_irreducible(const std::vector<int>& d, std::uint32_t p, std::ostream& out) {
  require_admissible(d, p);
  const bool closed = irreducible(d, p);
  const std::size_t count = components(d, p).size();
  Json j = header("irreducible");
  j["p"] = p;
  j["d"] = d;
  j["irreducible"] = closed;
  j["components_count"] = count;
  j["agrees_with_components"] = closed == (count == 1);
  j["disconnected_criterion"] = disconnected_criterion(d.front(), p);
  emit(out, j);
  return kOk;
}

Json certificate_json(const DeformationCertificate& c) {
  Json j = header("verify-deformation");
  j["p"] = c.p;
  j["n"] = c.n;
  j["special"] = entries_json(c.special);
  j["family"] = entries_json(c.family);
  j["family_field"] = c.family.field().name();
  j["M"] = c.m.rows;
  j["N"] = c.n_type.rows;
  j["type"] = c.type_string();
  j["special_datum"] = datum_json(c.special_datum);
  j["generic_datum"] = datum_json(c.generic_datum);
  j["parameter_power"] = c.parameter_power;
  j["fiber_check"] = c.fiber_check;
  j["fiber_matches"] = c.fiber_matches;
  Json cl = Json::array();
  for (const auto& k : c.clusters) {
    Json q;
    q["special_point"] = k.special_point.to_string();
    q["special_row"] = k.special_row;
    q["generic_points"] = places_json(k.generic_points);
    q["generic_rows"] = k.generic_rows;
    q["special_swan"] = k.special_swan;
    q["generic_swan"] = k.generic_swan;
    q["swan_ok"] = k.swan_ok;
    cl.push_back(q);
  }
  j["clusters"] = cl;
  j["refines"] = c.refines_ok;
  j["valid"] = c.valid;
  j["failure"] = c.failure;
  return j;
}

int cmd_split(const std::string& row_arg, std::uint32_t p, const std::string& witt, const std::string& plan,
              std::ostream& out, std::ostream& err) {
  const Row row = parse_tuple(row_arg);
  const BranchingDatum s = pop_split(row, p);
  Json j = header("split-pop");
  j["p"] = p;
  j["row"] = row;
  j["rows"] = s.rows;
  j["column_sums"] = s.conductors();
  j["essential_free"] = essential_free(s);
  j["valid"] = validate_datum(s).valid;
  if (witt.empty()) {
    emit(out, j);
    return kOk;
  }
  const WittVector u = witt_from_json(parse_json(witt));
  if (u.prime() != p) throw ParseError("Witt vector prime differs from --p");
  if (branching_datum(u).canonical().rows != BranchingDatum(p, {row}).rows)
    throw InvalidDatumError("Witt vector is not of type " + row_string(row));
  const Field k = Field::parametric(u.field());
  std::vector<FieldValue> points;
  if (!plan.empty()) {
    std::stringstream ss(plan);
    std::string item;
    while (std::getline(ss, item, ',')) points.push_back(parse_field_value(item, k));
  }
  try {
    const WittVector fam = pop_family(u, points);
    j["family"] = entries_json(fam);
    j["family_field"] = fam.field().name();
    j["certificate"] = certificate_json(verify_deformation(u, fam));
  } catch (const ConstructionError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidCertificate;
  }
  emit(out, j);
  return kOk;
}

int cmd_verify(const std::string& special_arg, const std::string& family_arg, const std::string& m_arg,
               const std::string& n_arg, std::ostream& out, std::ostream& err) {
  const WittVector special = witt_from_json(parse_json(special_arg));
  const WittVector family = witt_from_json(parse_json(family_arg));
  std::optional<BranchingDatum> m, n;
  if (!m_arg.empty()) m = datum_from_arg(m_arg, special.prime());
  if (!n_arg.empty()) n = datum_from_arg(n_arg, special.prime());
  const DeformationCertificate c = verify_deformation(special, family, m, n);
  emit(out, certificate_json(c));
  if (!c.valid) {
    err << "invalid certificate: " << c.failure << '\n';
    return kInvalidCertificate;
  }
  return kOk;
}

int cmd_exactness(const std::vector<int>& uvp, const std::string& form, const std::string& field, unsigned max_degree,
                  std::ostream& out) {
  Json j = header("exactness");
  if (!form.empty()) {
    if (field.empty()) throw ParseError("--form needs --field");
    const Field f = Field::parse(field);
    const ExactnessReport r = exactness(parse_ratfunc(form, f));
    j["form"] = parse_ratfunc(form, f).to_string();
    j["field"] = f.name();
    j["exact"] = r.exact;
    Json obs = Json::array();
    for (const auto& o : r.obstructions) {
      Json q;
      q["point"] = o.point.to_string();
      q["order"] = o.order;
      q["coefficient"] = o.coefficient.to_string();
      obs.push_back(q);
    }
    j["obstructions"] = obs;
    emit(out, j);
    return kOk;
  }
  if (uvp.size() != 3) throw ParseError("exactness expects U V P or --form");
  if (uvp[2] < 2) throw ParseError("p must be a prime");
  const auto p = static_cast<std::uint32_t>(uvp[2]);
  Field::prime(p);  // validates primality
  const ExactnessSearch s = exactness_search(uvp[0], uvp[1], p, max_degree);
  j["u"] = s.u;
  j["v"] = s.v;
  j["p"] = s.p;
  j["obstruction_polynomials"] = s.obstruction_polynomials;
  j["gcd"] = s.gcd;
  j["all_nonzero"] = s.all_nonzero;
  j["closure_certified"] = s.closure_certified;
  j["max_degree"] = s.max_degree;
  j["roots"] = s.roots;
  j["verdict"] = s.verdict();
  emit(out, j);
  return kOk;
}

int cmd_graph(const std::vector<int>& d, std::uint32_t p, const std::string& format, unsigned jobs, std::ostream& out) {
  require_admissible(d, p);
  const PartitionGraph g = build_graph(d, p, jobs);
  if (format == "json") {
    Json j = graph_json(g, std::nullopt);
    j["command"] = "graph";
    emit(out, j);
  } else {
    out << to_dot(g);
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Artin-Schreier-Witt covers: ramification, moduli strata and deformations", "aswmod"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "aswmod 0.1.0");

  std::string input, format = "json", strata, row, witt, plan, special, family, m_arg, n_arg, form, field;
  std::string d_arg;
  std::vector<int> uvp;
  std::uint32_t p = 0;
  unsigned jobs = 1, max_degree = 3;
  bool components_only = false, dot = false;

  auto* analyze = app.add_subcommand("analyze", "Reduce a Witt vector and report its ramification");
  analyze->add_option("input", input, "Witt vector JSON: file, inline object, or - for stdin")->required();
  analyze->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));

  auto add_tuple = [&](CLI::App* sc) {
    sc->add_option("d", d_arg, "conductor tuple, e.g. 4,8")->required();
    sc->add_option("-p,--p", p, "characteristic")->required();
  };
  auto* enumerate = app.add_subcommand("enumerate", "List the partitions of a conductor tuple and their order");
  add_tuple(enumerate);
  enumerate->add_option("--strata", strata, "only vertices with these column supports");
  enumerate->add_flag("--components", components_only, "list components only (no graph)");
  enumerate->add_flag("--dot", dot, "emit Graphviz DOT");
  enumerate->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  enumerate->add_option("-j,--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));

  auto* comps = app.add_subcommand("components", "Irreducible components (essential-free partitions)");
  add_tuple(comps);
  auto* irr = app.add_subcommand("irreducible", "Closed-form irreducibility test");
  add_tuple(irr);

  auto* split = app.add_subcommand("split-pop", "Pop splitting of a row, optionally with an explicit family");
  split->add_option("row", row, "conductor row, e.g. 9,53")->required();
  split->add_option("-p,--p", p, "characteristic")->required();
  split->add_option("--witt", witt, "one-point Witt vector JSON to deform");
  split->add_option("--plan", plan, "comma-separated new branch points in t");

  auto* verify = app.add_subcommand("verify-deformation", "Check a deformation certificate");
  verify->add_option("special", special, "special fiber Witt vector JSON")->required();
  verify->add_option("family", family, "family Witt vector JSON over F_q(t)")->required();
  verify->add_option("--m", m_arg, "claimed special type, e.g. [[4,8]]");
  verify->add_option("--n", n_arg, "claimed generic type");

  auto* exact = app.add_subcommand("exactness", "Exactness of dx/(x^u (x-a)^v), or of a given form");
  exact->add_option("uvp", uvp, "U V P")->expected(0, 3);
  exact->add_option("--max-degree", max_degree, "search roots in F_{p^m}, m up to this bound")
      ->check(CLI::Range(1u, 8u));
  exact->add_option("--form", form, "rational function f for the form f dx");
  exact->add_option("--field", field, "field of the form, e.g. F5");

  auto* graph = app.add_subcommand("graph", "Refinement graph of a conductor tuple");
  add_tuple(graph);
  graph->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  graph->add_option("-j,--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));
  graph->callback([&] {
    if (graph->count("--format") == 0) format = "dot";
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForVersion&) {
    out << "aswmod 0.1.0\n";
    return kOk;
  } catch (const CLI::Success&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kParse;
  }

  try {
    auto tuple = [&] { return parse_tuple(d_arg); };
    if (*analyze) return cmd_analyze(input, format, out);
    if (*enumerate) return cmd_enumerate(tuple(), p, strata, components_only, dot, format, jobs, out);
    if (*comps) return cmd_components(tuple(), p, out);
    if (*irr) return cmd_irreducible(tuple(), p, out);
    if (*split) return cmd_split(row, p, witt, plan, out, err);
    if (*verify) return cmd_verify(special, family, m_arg, n_arg, out, err);
    if (*exact) return cmd_exactness(uvp, form, field, max_degree, out);
    if (*graph) return cmd_graph(tuple(), p, format, jobs, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const UnsplitPoleError& e) {
    err << "error: " << e.what() << '\n';
    return kUnsplit;
  } catch (const InadmissibleError& e) {
    err << "error: " << e.what() << '\n';
    return kInadmissible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace asw::cli
