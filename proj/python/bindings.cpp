#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "spenum/canonical.hpp"
#include "spenum/enumerate.hpp"
#include "spenum/input.hpp"
#include "spenum/oracle.hpp"
#include "spenum/semioriented.hpp"

namespace py = pybind11;
using namespace spenum;

namespace {

py::int_ to_py(const BigInt& v) {
    std::ostringstream ss;
    ss << v;
    return py::reinterpret_steal<py::int_>(PyLong_FromString(ss.str().c_str(), nullptr, 10));
}

TreeKind kind_of(bool near) { return near ? TreeKind::Near : TreeKind::Spanning; }

void check_mode(const std::string& mode, bool near) {
    if (mode != "oriented" && mode != "semioriented" && mode != "total")
        throw py::value_error("mode must be oriented, semioriented or total");
    if (near && mode == "semioriented") throw py::value_error("near trees are not available in semioriented mode");
}

// Each tree as sorted (u, v) label pairs with u <= v.
std::vector<std::vector<std::pair<std::string, std::string>>> labeled(const DecompTree& t, const TreeList& list) {
    auto g = underlying_graph(t);
    std::vector<std::vector<std::pair<std::string, std::string>>> out;
    out.reserve(list.size());
    for (const auto& es : list) {
        std::vector<std::pair<std::string, std::string>> edges;
        for (auto m : es.members()) {
            auto a = g.label(g.edges()[m].u).str();
            auto b = g.label(g.edges()[m].v).str();
            if (b < a) std::swap(a, b);
            edges.emplace_back(a, b);
        }
        std::sort(edges.begin(), edges.end());
        out.push_back(std::move(edges));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Nonequivalent spanning trees of series-parallel graphs";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<DecompositionError>(m, "DecompositionError", PyExc_ValueError);
    py::register_exception<oracle::LimitExceeded>(m, "LimitExceeded", PyExc_RuntimeError);

    m.def("parse", [](const std::string& text) { return serialize_sp(parse_sp(text)); }, py::arg("text"),
          "Normalized form of an expression.");

    m.def("from_edges",
          [](const std::vector<std::pair<std::string, std::string>>& edges, const std::string& s, const std::string& t) {
              std::vector<LabelPair> pairs;
              for (const auto& [u, v] : edges) pairs.emplace_back(VertexLabel(u), VertexLabel(v));
              return serialize_sp(decompose_edge_list(pairs, VertexLabel(s), VertexLabel(t)));
          },
          py::arg("edges"), py::arg("s"), py::arg("t"));

    m.def("canonical_code", [](const std::string& text) { return canonical_code(parse_sp(text)).to_string(); },
          py::arg("text"));
    m.def("reversal_code", [](const std::string& text) { return reversal_code(parse_sp(text)).to_string(); },
          py::arg("text"));

    m.def("count",
          [](const std::string& text, const std::string& mode, bool near) {
              check_mode(mode, near);
              auto t = parse_sp(text);
              if (mode == "semioriented") return to_py(count_semioriented(SemiorientedSP{t}));
              auto c = mode == "total" ? count_total(t) : count_oriented(OrientedSP{t});
              return to_py(near ? c.near : c.spanning);
          },
          py::arg("text"), py::arg("mode") = "oriented", py::arg("near") = false);

    m.def("enumerate",
          [](const std::string& text, const std::string& mode, bool near) {
              check_mode(mode, near);
              auto t = parse_sp(text);
              TreeList list;
              {
                  py::gil_scoped_release release;
                  if (mode == "semioriented") list = semioriented_spanning(SemiorientedSP{t});
                  else if (mode == "total") list = total_trees(t, kind_of(near));
                  else list = SpInstance(t).trees(kind_of(near));
              }
              return labeled(t, list);
          },
          py::arg("text"), py::arg("mode") = "oriented", py::arg("near") = false);

    m.def("random_sp",
          [](std::uint64_t seed, unsigned max_depth, unsigned max_children, double leaf_bias) {
              return serialize_sp(random_sp({seed, max_depth, max_children, leaf_bias}));
          },
          py::arg("seed"), py::arg("max_depth") = 4, py::arg("max_children") = 3, py::arg("leaf_bias") = 0.3);

    m.def("oracle_counts",
          [](const std::string& text, std::size_t limit) {
              auto t = parse_sp(text);
              auto g = underlying_graph(t);
              auto s = g.index_of(t.source);
              auto tt = g.index_of(t.target);
              auto trees = oracle::all_spanning_trees(g, limit);
              auto aut_or = oracle::automorphisms(g, oracle::FixBoth{s, tt}, limit);
              auto aut_semi = oracle::automorphisms(g, oracle::FixSet{s, tt}, limit);
              py::dict d;
              d["total"] = trees.size();
              d["kirchhoff"] = to_py(oracle::kirchhoff_count(g));
              d["oriented"] = oracle::orbit_partition(trees, aut_or, g).orbits.size();
              d["semioriented"] = oracle::orbit_partition(trees, aut_semi, g).orbits.size();
              d["aut_or"] = aut_or.size();
              d["aut_semi"] = aut_semi.size();
              return d;
          },
          py::arg("text"), py::arg("limit") = oracle::kDefaultVertexLimit);
}
