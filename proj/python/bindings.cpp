#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pgtd/circuit.hpp"
#include "pgtd/core.hpp"
#include "pgtd/oracle.hpp"
#include "pgtd/reduction.hpp"
#include "pgtd/scw.hpp"
#include "pgtd/treedepth.hpp"
#include "pgtd/treemodel.hpp"

namespace py = pybind11;
using namespace pgtd;

namespace {

std::vector<std::string> winner_letters(const WinnerPartition& winners) {
    std::vector<std::string> out;
    for (Player p : winners.winner) out.push_back(std::string(1, player_char(p)));
    return out;
}

}  // namespace

PYBIND11_MODULE(_pgtd, m) {
    m.doc() = "parity game solving toolkit";

    py::class_<ParityGame>(m, "ParityGame")
        .def_property_readonly("size", &ParityGame::size)
        .def("__repr__", [](const ParityGame& g) { return serialize_pg(g); });
    py::class_<TreeModel>(m, "TreeModel")
        .def_property_readonly("height", [](const TreeModel& tm) { return tm.height; })
        .def("__repr__", [](const TreeModel& tm) { return serialize_tm(tm); });
    py::class_<EliminationForest>(m, "EliminationForest")
        .def_property_readonly("parent", [](const EliminationForest& f) { return f.parent; })
        .def_property_readonly("height", &EliminationForest::height)
        .def("__repr__", [](const EliminationForest& f) { return serialize_forest(f); });

    m.def("parse_pg", [](const std::string& text) { return parse_pg(text); });
    m.def("serialize_pg", &serialize_pg);
    m.def("parse_tm", [](const std::string& text) { return parse_tm(text); });
    m.def("serialize_tm", &serialize_tm);
    m.def("parse_forest", [](const std::string& text) { return parse_forest(text); });
    m.def("serialize_forest", &serialize_forest);

    m.def("solve_zielonka",
          [](const ParityGame& g) { return winner_letters(solve_zielonka(g)); });
    m.def("solve_scw", [](const ParityGame& g, const TreeModel& tm) {
        return winner_letters(solve_scw(g, tm));
    });
    m.def("solve_treedepth", [](const ParityGame& g, const EliminationForest& f) {
        return winner_letters(solve_treedepth(g, f));
    });
    m.def("tree_depth", [](const ParityGame& g) { return tree_depth(g.arena); });
    m.def("find_forest", [](const ParityGame& g, int k) -> py::object {
        auto forest = find_forest(g.arena, k);
        if (!forest) return py::none();
        return py::cast(*forest);
    });
    m.def("induce_pg", [](const TreeModel& tm) {
        auto [arena, coloring] = induce_arena(tm);
        ParityGame game;
        game.arena = std::move(arena);
        game.rank.assign(game.arena.size(), 0);
        return game;
    });
    m.def("emit_scw_circuit_text",
          [](int n, int d, int k) { return serialize_circuit(emit_scw_circuit(n, d, k)); });
}
