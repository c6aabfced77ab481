#include "trophom/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trophom/io.hpp"

namespace trophom {

namespace {

struct Options {
  std::string format = "json";
  std::string output;
  unsigned threads = 1;
  bool emit_generators = false;
};

// A mathematical failure that still produced a report.
struct Outcome {
  Json json;
  std::string table;
  bool ok = true;
};

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  auto cells = [](const std::string& s) {
    // count code points so the check marks align
    std::size_t n = 0;
    for (unsigned char ch : s)
      if ((ch & 0xC0) != 0x80) ++n;
    return n;
  };
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], cells(r[i]));
    }
  std::ostringstream os;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - cells(r[i]) + 2, ' ');
    }
    os << line << "\n";
  }
  return os.str();
}

std::string base_dir(const std::string& path) {
  auto p = std::filesystem::path(path).parent_path();
  return p.empty() ? "." : p.string();
}

FaceComplex load_complex(const std::string& path) { return complex_from_json(read_json_file(path)); }

Json table_json(const HomologyTable& t, const std::string& kind, std::size_t p0, std::size_t p1, std::size_t q0,
                std::size_t q1, bool gens) {
  Json entries = Json::array();
  for (const auto& [pq, r] : t) {
    if (pq.first < p0 || pq.first > p1 || pq.second < q0 || pq.second > q1) continue;
    Json e = {{"p", pq.first}, {"q", pq.second}};
    e.update(shape_to_json(r.shape));
    if (gens) {
      Json g = Json::array();
      for (std::size_t i = 0; i < r.generators.size(); ++i)
        g.push_back({{"order", r.orders[i].get_str()}, {"vector", int_vector_to_json(r.generators[i])}});
      e["generators"] = g;
    }
    entries.push_back(e);
  }
  return {{"kind", kind}, {"entries", entries}};
}

std::string table_text(const HomologyTable& t, std::size_t p0, std::size_t p1, std::size_t q0, std::size_t q1) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head{"p\\q"};
  for (std::size_t q = q0; q <= q1; ++q) head.push_back(std::to_string(q));
  rows.push_back(head);
  for (std::size_t p = p0; p <= p1; ++p) {
    std::vector<std::string> r{std::to_string(p)};
    for (std::size_t q = q0; q <= q1; ++q) r.push_back(t.at({p, q}).shape.to_string());
    rows.push_back(r);
  }
  return render_table(rows);
}

Json chain_basis_json(const IntChainComplex& cc, const FaceComplex& c, std::size_t q) {
  Json b = Json::array();
  if (q > cc.top_degree()) return b;
  for (const auto& l : cc.basis(q)) b.push_back({{"cell", c.cell(l.cells[0]).id}, {"index", l.index}});
  return b;
}

Outcome cmd_validate(const std::string& in) {
  FaceComplex c = load_complex(in);
  ValidationReport r = validate_complex(c);
  Outcome o{validation_to_json(r), "", r.valid()};
  std::vector<std::vector<std::string>> rows{{"kind", "cell", "other", "message"}};
  for (const auto& v : r.violations) rows.push_back({v.kind, v.cell, v.other, v.message});
  o.table = r.valid() ? "valid\n" : render_table(rows);
  return o;
}

Outcome cmd_balance(const std::string& in) {
  TropicalCycle a = cycle_from_json(read_json_file(in));
  BalancingReport r = is_balanced(a);
  Outcome o{balancing_to_json(r), "", r.balanced()};
  std::vector<std::vector<std::string>> rows{{"cell", "sum"}};
  for (const auto& f : r.failures) rows.push_back({f.cell, int_vector_to_json(f.sum).dump()});
  o.table = r.balanced() ? "balanced\n" : render_table(rows);
  return o;
}

Outcome cmd_homology(const std::string& in, bool cohomology, long p0, long p1, long q0, long q1, const Options& opt) {
  FaceComplex c = load_complex(in);
  const std::size_t d = static_cast<std::size_t>(std::max(c.dim(), 0));
  auto clamp = [&](long v, std::size_t dflt) { return v < 0 ? dflt : static_cast<std::size_t>(v); };
  std::size_t pa = clamp(p0, 0), pb = clamp(p1, d), qa = clamp(q0, 0), qb = clamp(q1, d);
  if (pa > pb || qa > qb) throw InputError("options", "", "empty bigrade range");
  std::size_t top = std::max(pb, qb);
  HomologyTable t = cohomology ? cohomology_table(c, top, opt.threads, opt.emit_generators)
                               : bm_table(c, top, opt.threads, opt.emit_generators);
  return {table_json(t, cohomology ? "cohomology" : "borel_moore", pa, pb, qa, qb, opt.emit_generators),
          table_text(t, pa, pb, qa, qb), true};
}

Outcome cmd_intersect(const std::string& pl_path, const std::string& cycle_path) {
  PLFunction f = pl_from_json(read_json_file(pl_path), base_dir(pl_path));
  TropicalCycle a = cycle_from_json(read_json_file(cycle_path));
  CartierDivisor d;
  try {
    d = make_divisor(f);
  } catch (const std::invalid_argument& e) {
    throw InputError("precondition", "/cells", e.what());
  }
  TropicalCycle b = intersect(d, a);
  std::vector<std::vector<std::string>> rows{{"cell", "weight"}};
  for (const auto& [s, w] : b.weights)
    if (w != 0) rows.push_back({b.complex.cell(s).id, w.get_str()});
  return {cycle_to_json(b), render_table(rows), true};
}

Outcome cmd_pushforward(const std::string& map_path, const std::string& cycle_path, const std::string& target_path,
                        bool strict) {
  AffineMap f = affine_map_from_json(read_json_file(map_path));
  TropicalCycle a = cycle_from_json(read_json_file(cycle_path));
  FaceComplex t = load_complex(target_path);
  TropicalCycle b = push_forward(f, a, t, strict);
  std::vector<std::vector<std::string>> rows{{"cell", "weight"}};
  for (const auto& [s, w] : b.weights)
    if (w != 0) rows.push_back({b.complex.cell(s).id, w.get_str()});
  return {cycle_to_json(b), render_table(rows), true};
}

Outcome cmd_bergman(const std::string& in) {
  Matroid m = matroid_from_json(read_json_file(in));
  BergmanFan b = bergman_fan(m);
  std::vector<std::vector<std::string>> rows{{"cell", "dim", "rays"}};
  for (const auto& c : b.fan.cells()) {
    Json r = Json::array();
    for (const auto& ray : c.rays) r.push_back(int_vector_to_json(ray));
    rows.push_back({c.id, std::to_string(c.dim), r.dump()});
  }
  return {complex_to_json(b.fan), render_table(rows), true};
}

Outcome cmd_pd(const std::string& in, long n_opt, const Options& opt) {
  FaceComplex c = load_complex(in);
  std::size_t n = n_opt < 0 ? static_cast<std::size_t>(std::max(c.dim(), 0)) : static_cast<std::size_t>(n_opt);
  DualityReport r = pd_check(c, n, opt.threads);
  Json entries = Json::array();
  std::vector<std::vector<std::string>> rows{{"p", "q", "H^BM_{p,q}", "H^{n-p,n-q}", "verdict"}};
  for (const auto& e : r.entries) {
    entries.push_back({{"p", e.p}, {"q", e.q}, {"bm", shape_to_json(e.bm)}, {"cohomology", shape_to_json(e.cohomology)},
                       {"match", e.match}});
    rows.push_back({std::to_string(e.p), std::to_string(e.q), e.bm.to_string(), e.cohomology.to_string(),
                    e.match ? "✓" : "✗"});
  }
  Json top = Json::object();
  std::string top_text;
  for (const auto& [p, ok] : r.top_row) {
    top[std::to_string(p)] = ok;
    top_text += "duality map on global forms, p=" + std::to_string(p) + ": " + (ok ? "✓" : "✗") + "\n";
  }
  std::string notes;
  for (const auto& s : r.notes) notes += "note: " + s + "\n";
  Json j = {{"n", n}, {"entries", entries}, {"top_row", top}, {"notes", r.notes}, {"passed", r.passed()}};
  return {j, render_table(rows) + top_text + notes + (r.passed() ? "PASS\n" : "FAIL\n"), r.passed()};
}

Outcome cmd_kunneth(const std::string& a_path, const std::string& b_path, const Options& opt) {
  FaceComplex a = load_complex(a_path), b = load_complex(b_path);
  KunnethReport r = kunneth_check(a, b, opt.threads);
  Json entries = Json::array();
  std::vector<std::vector<std::string>> rows{{"p", "q", "product", "expected", "verdict"}};
  for (const auto& e : r.entries) {
    entries.push_back({{"p", e.p}, {"q", e.q}, {"product", shape_to_json(e.product)},
                       {"expected", shape_to_json(e.expected)}, {"match", e.match}});
    rows.push_back({std::to_string(e.p), std::to_string(e.q), e.product.to_string(), e.expected.to_string(),
                    e.match ? "✓" : "✗"});
  }
  return {{{"entries", entries}, {"passed", r.passed()}}, render_table(rows) + (r.passed() ? "PASS\n" : "FAIL\n"),
          r.passed()};
}

Outcome cmd_cycle_class(const std::string& cycle_path, const std::string& ambient_path) {
  TropicalCycle a = cycle_from_json(read_json_file(cycle_path));
  FaceComplex amb = ambient_path.empty() ? a.complex : load_complex(ambient_path);
  TropicalChainClass cls = cycle_class(a, amb, false);
  IntChainComplex cc = bm_complex(amb, a.k);
  Json basis = chain_basis_json(cc, amb, a.k);
  Json j = {{"p", cls.p}, {"q", cls.q}, {"closed", cls.closed}, {"chain", int_vector_to_json(cls.chain)}, {"basis", basis}};
  std::vector<std::vector<std::string>> rows{{"cell", "index", "coefficient"}};
  for (std::size_t i = 0; i < cls.chain.size(); ++i)
    rows.push_back({basis[i]["cell"].get<std::string>(), std::to_string(basis[i]["index"].get<std::size_t>()),
                    cls.chain[i].get_str()});
  return {j, render_table(rows) + (cls.closed ? "closed\n" : "not closed\n"), cls.closed};
}

Outcome cmd_forms(const std::string& in, std::size_t p) {
  FaceComplex c = load_complex(in);
  CellularFormSheaf f = omega_p(c, p);
  std::vector<std::vector<std::string>> rows{{"cell", "rank"}};
  for (std::size_t s = 0; s < c.size(); ++s) rows.push_back({c.cell(s).id, std::to_string(f.rank(s))});
  return {stalk_table_to_json(c, f), render_table(rows), true};
}

unsigned default_threads() {
  if (const char* env = std::getenv("TROPHOM_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tropical homology toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  opt.threads = default_threads();
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("-o,--output", opt.output, "Write the result to a file instead of stdout");
  app.add_option("--threads", opt.threads, "Worker threads for homology tables (default: TROPHOM_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  std::string in, in2, in3;
  long p0 = -1, p1 = -1, q0 = -1, q1 = -1, n = -1;
  std::size_t p = 1;
  bool cohomology = false, bm = false, strict = false;

  auto* validate = app.add_subcommand("validate", "Check the face-structure axioms of a complex");
  validate->add_option("complex", in, "FaceComplex JSON")->required();
  auto* balance = app.add_subcommand("balance", "Check the balancing condition of a cycle");
  balance->add_option("cycle", in, "Cycle JSON")->required();
  auto* homology_cmd = app.add_subcommand("homology", "Tropical Borel-Moore homology or cohomology table");
  homology_cmd->add_option("complex", in, "FaceComplex JSON")->required();
  homology_cmd->add_flag("--bm", bm, "Borel-Moore homology (default)");
  homology_cmd->add_flag("--cohomology", cohomology, "Tropical cohomology");
  homology_cmd->add_option("--p-min", p0);
  homology_cmd->add_option("--p-max", p1);
  homology_cmd->add_option("--q-min", q0);
  homology_cmd->add_option("--q-max", q1);
  homology_cmd->add_flag("--emit-generators", opt.emit_generators, "Include representative vectors");
  auto* intersect_cmd = app.add_subcommand("intersect", "Intersect a Cartier divisor with a cycle");
  intersect_cmd->add_option("divisor", in, "PLFunction JSON")->required();
  intersect_cmd->add_option("cycle", in2, "Cycle JSON")->required();
  auto* push = app.add_subcommand("pushforward", "Push a cycle forward along an affine map");
  push->add_option("map", in, "AffineMap JSON")->required();
  push->add_option("cycle", in2, "Cycle JSON")->required();
  push->add_option("target", in3, "Target FaceComplex JSON")->required();
  push->add_flag("--strict-proper", strict, "Reject cells whose recession cone meets the kernel");
  auto* bergman = app.add_subcommand("bergman", "Bergman fan of a matroid");
  bergman->add_option("matroid", in, "Matroid JSON")->required();
  auto* pd = app.add_subcommand("pd", "Poincare duality check");
  pd->add_option("complex", in, "FaceComplex JSON")->required();
  pd->add_option("-n,--dim", n, "Dimension (default: dimension of the complex)");
  auto* kun = app.add_subcommand("kunneth", "Kunneth check for a product");
  kun->add_option("a", in, "FaceComplex JSON")->required();
  kun->add_option("b", in2, "FaceComplex JSON")->required();
  auto* cls = app.add_subcommand("cycle-class", "Cycle class of a tropical cycle");
  cls->add_option("cycle", in, "Cycle JSON")->required();
  cls->add_option("ambient", in2, "Ambient FaceComplex JSON (default: the cycle's complex)");
  auto* forms = app.add_subcommand("forms", "Stalk table of the sheaf of p-forms");
  forms->add_option("complex", in, "FaceComplex JSON")->required();
  forms->add_option("-p,--degree", p, "Form degree");

  auto report_error = [&](const Json& e, int code) {
    err << e.dump() << "\n";
    return code;
  };
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return report_error(InputError("usage", "", e.what()).to_json(), 2);
  }
  if (cohomology && bm) return report_error(InputError("usage", "", "--bm and --cohomology are exclusive").to_json(), 2);

  Outcome o;
  try {
    if (*validate) o = cmd_validate(in);
    else if (*balance) o = cmd_balance(in);
    else if (*homology_cmd) o = cmd_homology(in, cohomology, p0, p1, q0, q1, opt);
    else if (*intersect_cmd) o = cmd_intersect(in, in2);
    else if (*push) o = cmd_pushforward(in, in2, in3, strict);
    else if (*bergman) o = cmd_bergman(in);
    else if (*pd) o = cmd_pd(in, n, opt);
    else if (*kun) o = cmd_kunneth(in, in2, opt);
    else if (*cls) o = cmd_cycle_class(in, in2);
    else if (*forms) o = cmd_forms(in, p);
  } catch (const InputError& e) {
    return report_error(e.to_json(), 2);
  } catch (const std::invalid_argument& e) {
    return report_error(InputError("precondition", "", e.what()).to_json(), 2);
  } catch (const std::exception& e) {
    return report_error({{"error", {{"kind", "mathematical"}, {"path", ""}, {"message", e.what()}}}}, 1);
  }

  std::string text = opt.format == "json" ? o.json.dump(2) + "\n" : o.table;
  if (opt.output.empty()) {
    out << text;
  } else {
    std::ofstream f(opt.output);
    if (!f) return report_error(InputError("io", opt.output, "cannot write output file").to_json(), 2);
    f << text;
  }
  return o.ok ? 0 : 1;
}

}  // namespace trophom
