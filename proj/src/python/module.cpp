// Python bindings. Structured inputs and outputs cross the boundary as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "trophom/cli.hpp"
#include "trophom/homology.hpp"
#include "trophom/io.hpp"
#include "trophom/matroids.hpp"

namespace py = pybind11;
using namespace trophom;

namespace {

FaceComplex parse_complex(const std::string& text) { return complex_from_json(Json::parse(text)); }

std::size_t top(const FaceComplex& c) { return static_cast<std::size_t>(std::max(c.dim(), 0)); }

std::map<std::pair<std::size_t, std::size_t>, std::string> shapes(const HomologyTable& t) {
  std::map<std::pair<std::size_t, std::size_t>, std::string> out;
  for (const auto& [k, r] : t) out[k] = r.shape.to_string();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Integral tropical homology of rational polyhedral complexes";

  m.def(
      "run",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "trophom");
        std::vector<const char*> argv;
        for (auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a CLI subcommand; returns (exit_code, stdout, stderr).");

  m.def(
      "validate",
      [](const std::string& complex_json) { return validation_to_json(validate_complex(parse_complex(complex_json))).dump(); },
      py::arg("complex_json"));

  m.def(
      "is_balanced",
      [](const std::string& cycle_json) { return is_balanced(cycle_from_json(Json::parse(cycle_json))).balanced(); },
      py::arg("cycle_json"));

  m.def(
      "bergman_fan",
      [](const std::string& matroid_json) {
        return complex_to_json(bergman_fan(matroid_from_json(Json::parse(matroid_json))).fan).dump();
      },
      py::arg("matroid_json"));

  m.def(
      "bm_homology",
      [](const std::string& complex_json, unsigned threads) {
        FaceComplex c = parse_complex(complex_json);
        return shapes(bm_table(c, top(c), threads));
      },
      py::arg("complex_json"), py::arg("threads") = 1, "Map (p, q) -> group, e.g. 'Z^2'.");

  m.def(
      "cohomology",
      [](const std::string& complex_json, unsigned threads) {
        FaceComplex c = parse_complex(complex_json);
        return shapes(cohomology_table(c, top(c), threads));
      },
      py::arg("complex_json"), py::arg("threads") = 1);

  m.def(
      "pd_check",
      [](const std::string& complex_json) {
        FaceComplex c = parse_complex(complex_json);
        return pd_check(c, top(c)).passed();
      },
      py::arg("complex_json"));

  m.def(
      "kunneth_check",
      [](const std::string& a, const std::string& b) { return kunneth_check(parse_complex(a), parse_complex(b)).passed(); },
      py::arg("a_json"), py::arg("b_json"));

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
}
