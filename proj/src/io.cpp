#include "trophom/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace trophom {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& message) {
  throw InputError("schema", where, message);
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(where + "/" + key, "missing required field '" + key + "'");
  return *it;
}

const Json& array_at(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  return j;
}

Integer read_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  schema_error(where, "expected an integer");
}

Rational read_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(read_integer(j, where));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      schema_error(where, std::string("expected a rational \"p/q\": ") + e.what());
    }
  }
  schema_error(where, "expected a rational encoded as a \"p/q\" string");
}

IntVector read_int_vector(const Json& j, const std::string& where) {
  array_at(j, where);
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_integer(j[i], where + "/" + std::to_string(i)));
  return v;
}

QVector read_q_vector(const Json& j, const std::string& where) {
  array_at(j, where);
  QVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_rational(j[i], where + "/" + std::to_string(i)));
  return v;
}

std::size_t read_index(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) schema_error(where, "expected a nonnegative integer");
  return static_cast<std::size_t>(j.get<long long>());
}

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

template <class F>
auto wrap_math(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError("precondition", where, e.what());
  }
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("io", path, "cannot open file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed_json", path, e.what());
  }
}

Json int_vector_to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

FaceComplex complex_from_json(const Json& j) {
  const std::size_t n = read_index(field(j, "ambient_dim", ""), "/ambient_dim");
  const Json& cells = array_at(field(j, "cells", ""), "/cells");
  std::vector<CellSpec> specs;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string w = "/cells/" + std::to_string(i);
    const Json& c = cells[i];
    CellSpec s;
    const Json& id = field(c, "id", w);
    if (!id.is_string()) schema_error(w + "/id", "expected a string");
    s.id = id.get<std::string>();
    if (c.contains("sedentarity")) {
      const Json& sd = array_at(c["sedentarity"], w + "/sedentarity");
      for (std::size_t k = 0; k < sd.size(); ++k) s.sedentarity.push_back(read_index(sd[k], w + "/sedentarity/" + std::to_string(k)));
    }
    const Json& vs = array_at(field(c, "vertices", w), w + "/vertices");
    for (std::size_t k = 0; k < vs.size(); ++k) s.vertices.push_back(read_q_vector(vs[k], w + "/vertices/" + std::to_string(k)));
    if (c.contains("rays")) {
      const Json& rs = array_at(c["rays"], w + "/rays");
      for (std::size_t k = 0; k < rs.size(); ++k) s.rays.push_back(read_int_vector(rs[k], w + "/rays/" + std::to_string(k)));
    }
    if (c.contains("faces")) {
      const Json& fs = array_at(c["faces"], w + "/faces");
      for (std::size_t k = 0; k < fs.size(); ++k) {
        const std::string fw = w + "/faces/" + std::to_string(k);
        const Json& f = fs[k];
        FaceRef r;
        if (f.is_string()) {
          r.id = f.get<std::string>();
        } else if (f.is_array() && !f.empty() && f.size() <= 2 && f[0].is_string()) {
          r.id = f[0].get<std::string>();
          if (f.size() == 2) {
            if (!f[1].is_boolean()) schema_error(fw + "/1", "expected a boolean");
            r.at_infinity = f[1].get<bool>();
          }
        } else if (f.is_object() && f.contains("id") && f["id"].is_string()) {
          r.id = f["id"].get<std::string>();
          if (f.contains("at_infinity")) {
            if (!f["at_infinity"].is_boolean()) schema_error(fw + "/at_infinity", "expected a boolean");
            r.at_infinity = f["at_infinity"].get<bool>();
          }
        } else {
          schema_error(fw, "expected a face id, an [id, at_infinity] pair or an object");
        }
        s.faces.push_back(r);
      }
    }
    if (c.contains("orientation_sign")) {
      const Json& o = c["orientation_sign"];
      if (!o.is_number_integer() || (o.get<int>() != 1 && o.get<int>() != -1))
        schema_error(w + "/orientation_sign", "expected +1 or -1");
      s.orientation_sign = o.get<int>();
    }
    specs.push_back(s);
  }
  FaceComplex fc = wrap_math("/cells", [&] { return FaceComplex::build(n, specs); });
  for (std::size_t i = 0; i < specs.size(); ++i)
    for (const auto& f : specs[i].faces) {
      const Cell& face = fc.cell(fc.index(f.id));
      bool inf = face.sedentarity != fc.cell(i).sedentarity;
      if (inf != f.at_infinity)
        schema_error("/cells/" + std::to_string(i) + "/faces",
                     "face '" + f.id + "' at_infinity flag does not match the sedentarities");
    }
  if (j.contains("incidence_signs")) {
    const Json& sg = array_at(j["incidence_signs"], "/incidence_signs");
    for (std::size_t k = 0; k < sg.size(); ++k) {
      const std::string w = "/incidence_signs/" + std::to_string(k);
      const Json& e = sg[k];
      const Json& cell = field(e, "cell", w);
      const Json& face = field(e, "face", w);
      const Json& sign = field(e, "sign", w);
      if (!cell.is_string() || !face.is_string()) schema_error(w, "cell and face must be strings");
      if (!sign.is_number_integer() || (sign.get<int>() != 1 && sign.get<int>() != -1))
        schema_error(w + "/sign", "expected +1 or -1");
      fc = wrap_math(w, [&] {
        return fc.with_incidence_sign(fc.index(cell.get<std::string>()), fc.index(face.get<std::string>()), sign.get<int>());
      });
    }
  }
  return fc;
}

Json complex_to_json(const FaceComplex& c) {
  Json cells = Json::array();
  for (const auto& s : c.to_specs()) {
    Json v = Json::array();
    for (const auto& p : s.vertices) {
      Json q = Json::array();
      for (const auto& x : p) q.push_back(rational_to_string(x));
      v.push_back(q);
    }
    Json r = Json::array();
    for (const auto& ray : s.rays) r.push_back(int_vector_to_json(ray));
    Json f = Json::array();
    for (const auto& face : s.faces) f.push_back(Json::array({face.id, face.at_infinity}));
    cells.push_back({{"id", s.id},
                     {"sedentarity", s.sedentarity},
                     {"vertices", v},
                     {"rays", r},
                     {"faces", f},
                     {"orientation_sign", s.orientation_sign}});
  }
  Json out = {{"ambient_dim", c.ambient_dim()}, {"cells", cells}};
  if (!c.sign_overrides().empty()) {
    Json sg = Json::array();
    for (const auto& [k, v] : c.sign_overrides())
      sg.push_back({{"cell", c.cell(k.first).id}, {"face", c.cell(k.second).id}, {"sign", v}});
    out["incidence_signs"] = sg;
  }
  return out;
}

TropicalCycle cycle_from_json(const Json& j) {
  FaceComplex c;
  try {
    c = complex_from_json(field(j, "complex", ""));
  } catch (const InputError& e) {
    throw InputError(e.kind(), "/complex" + e.where(), e.what());
  }
  const std::size_t k = read_index(field(j, "k", ""), "/k");
  const Json& w = field(j, "weights", "");
  if (!w.is_object()) schema_error("/weights", "expected an object mapping cell ids to integers");
  std::map<std::string, Integer> weights;
  for (auto it = w.begin(); it != w.end(); ++it) weights[it.key()] = read_integer(it.value(), "/weights/" + it.key());
  return wrap_math("/weights", [&] { return make_cycle(c, k, weights); });
}

Json cycle_to_json(const TropicalCycle& a) {
  Json w = Json::object();
  for (const auto& [s, x] : a.weights) w[a.complex.cell(s).id] = integer_json(x);
  return {{"complex", complex_to_json(a.complex)}, {"k", a.k}, {"weights", w}};
}

PLFunction pl_from_json(const Json& j, const std::string& base_dir) {
  FaceComplex c;
  if (j.contains("complex_ref")) {
    const Json& ref = j["complex_ref"];
    if (!ref.is_string()) schema_error("/complex_ref", "expected a path string");
    std::filesystem::path p(ref.get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    c = complex_from_json(read_json_file(p.string()));
  } else if (j.contains("complex")) {
    try {
      c = complex_from_json(j["complex"]);
    } catch (const InputError& e) {
      throw InputError(e.kind(), "/complex" + e.where(), e.what());
    }
  } else {
    schema_error("", "missing 'complex_ref' (or inline 'complex')");
  }
  const Json& cells = field(j, "cells", "");
  if (!cells.is_object()) schema_error("/cells", "expected an object mapping cell ids to affine data");
  std::map<std::string, AffinePiece> data;
  for (auto it = cells.begin(); it != cells.end(); ++it) {
    const std::string w = "/cells/" + it.key();
    AffinePiece p;
    p.covector = read_int_vector(field(it.value(), "covector", w), w + "/covector");
    p.constant = it.value().contains("constant") ? read_rational(it.value()["constant"], w + "/constant") : Rational(0);
    data[it.key()] = p;
  }
  return wrap_math("/cells", [&] { return make_pl(c, data); });
}

Json pl_to_json(const PLFunction& f) {
  Json cells = Json::object();
  for (std::size_t s = 0; s < f.complex.size(); ++s)
    cells[f.complex.cell(s).id] = {{"covector", int_vector_to_json(f.covectors[s])},
                                   {"constant", rational_to_string(f.constants[s])}};
  return {{"complex", complex_to_json(f.complex)}, {"cells", cells}};
}

Matroid matroid_from_json(const Json& j) {
  const Json& el = array_at(field(j, "elements", ""), "/elements");
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < el.size(); ++i) {
    std::string label;
    if (el[i].is_string())
      label = el[i].get<std::string>();
    else if (el[i].is_number_integer())
      label = std::to_string(el[i].get<long long>());
    else
      schema_error("/elements/" + std::to_string(i), "expected a label");
    index[label] = i;
    labels.push_back(label);
  }
  const Json& bs = array_at(field(j, "bases", ""), "/bases");
  std::vector<std::vector<std::size_t>> bases;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const std::string w = "/bases/" + std::to_string(i);
    array_at(bs[i], w);
    std::vector<std::size_t> b;
    for (std::size_t k = 0; k < bs[i].size(); ++k) {
      const Json& e = bs[i][k];
      std::string label = e.is_string() ? e.get<std::string>()
                          : e.is_number_integer() ? std::to_string(e.get<long long>())
                                                  : std::string();
      auto it = index.find(label);
      if (it == index.end()) schema_error(w + "/" + std::to_string(k), "unknown element");
      b.push_back(it->second);
    }
    bases.push_back(b);
  }
  return wrap_math("/bases", [&] { return Matroid::from_bases(labels, bases); });
}

Json matroid_to_json(const Matroid& m) {
  Json bases = Json::array();
  for (ElementSet b : m.bases()) {
    Json x = Json::array();
    for (std::size_t i : set_elements(b)) x.push_back(m.elements()[i]);
    bases.push_back(x);
  }
  return {{"elements", m.elements()}, {"bases", bases}};
}

AffineMap affine_map_from_json(const Json& j) {
  const Json& lin = array_at(field(j, "linear", ""), "/linear");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < lin.size(); ++i) rows.push_back(read_int_vector(lin[i], "/linear/" + std::to_string(i)));
  if (rows.empty()) schema_error("/linear", "linear part needs at least one row");
  const std::size_t cols = rows[0].size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols) schema_error("/linear/" + std::to_string(i), "rows of different lengths");
  AffineMap f{IntMatrix::from_rows(rows, cols), QVector(rows.size())};
  if (j.contains("translate")) {
    f.translate = read_q_vector(j["translate"], "/translate");
    if (f.translate.size() != rows.size()) schema_error("/translate", "translation has the wrong length");
  }
  return f;
}

Json shape_to_json(const AbelianGroupShape& s) {
  Json t = Json::array();
  for (const auto& x : s.invariant_factors) t.push_back(integer_json(x));
  return {{"rank", s.free_rank}, {"torsion", t}, {"group", s.to_string()}};
}

Json validation_to_json(const ValidationReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"kind", x.kind}, {"cell", x.cell}, {"other", x.other}, {"message", x.message}});
  return {{"valid", r.valid()}, {"violations", v}};
}

Json balancing_to_json(const BalancingReport& r) {
  Json f = Json::array();
  for (const auto& x : r.failures) f.push_back({{"cell", x.cell}, {"sum", int_vector_to_json(x.sum)}});
  return {{"balanced", r.balanced()}, {"failures", f}};
}

Json stalk_table_to_json(const FaceComplex& c, const CellularFormSheaf& f) {
  Json cells = Json::array();
  for (std::size_t s = 0; s < c.size(); ++s) {
    const FormStalk& st = f.stalk(s);
    Json basis = Json::array();
    for (std::size_t i = 0; i < st.rank(); ++i) basis.push_back(int_vector_to_json(st.lift.col(i)));
    cells.push_back({{"id", c.cell(s).id}, {"rank", st.rank()}, {"basis", basis}});
  }
  return {{"p", f.degree()}, {"cells", cells}};
}

}  // namespace trophom
