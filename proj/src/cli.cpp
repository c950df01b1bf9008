#include "pgtd/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pgtd/circuit.hpp"
#include "pgtd/core.hpp"
#include "pgtd/generate.hpp"
#include "pgtd/oracle.hpp"
#include "pgtd/reduction.hpp"
#include "pgtd/scw.hpp"
#include "pgtd/treedepth.hpp"
#include "pgtd/treemodel.hpp"

namespace pgtd {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path);
    if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
    file << text;
}

std::string winners_text(const WinnerPartition& winners) {
    std::ostringstream s;
    for (size_t v = 0; v < winners.winner.size(); ++v)
        s << v << ' ' << player_char(winners.winner[v]) << '\n';
    return s.str();
}

std::string arena_dot(const ParityGame& game) {
    std::ostringstream s;
    s << "digraph arena {\n";
    for (int v = 0; v < game.size(); ++v)
        s << "  v" << v << " [label=\"" << v << ":" << game.rank[v] << "\" shape="
          << (game.arena.owner[v] == Player::E ? "circle" : "box") << "];\n";
    for (const auto& [v, w] : game.arena.edges()) s << "  v" << v << " -> v" << w << ";\n";
    s << "}\n";
    return s.str();
}

std::string forest_dot(const EliminationForest& forest) {
    std::ostringstream s;
    s << "digraph forest {\n";
    for (int v = 0; v < forest.size(); ++v) {
        s << "  v" << v << ";\n";
        if (forest.parent[v] != EliminationForest::kNone)
            s << "  v" << forest.parent[v] << " -> v" << v << ";\n";
    }
    s << "}\n";
    return s.str();
}

std::string treemodel_dot(const TreeModel& tm) {
    std::ostringstream s;
    s << "digraph treemodel {\n";
    for (const auto& [leaf, color] : tm.leaf_color)
        s << "  n" << leaf << " [label=\"" << leaf << ":c" << color << "\" shape=circle];\n";
    for (const auto& [id, node] : tm.nodes) {
        s << "  n" << id << " [label=\"" << id << "@" << node.level << "\" shape=box];\n";
        for (int child : node.children) s << "  n" << id << " -> n" << child << ";\n";
    }
    s << "}\n";
    return s.str();
}

void maybe_dot(const std::string& path, const std::string& text) {
    if (path.empty()) return;
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    file << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"parity game solving toolkit"};
    app.require_subcommand(1);

    std::string game_path, tm_path, forest_path, out_path, dot_path, method = "auto";
    std::string circuit_path, bits;
    int max_k = 3, opt_n = 0, opt_d = 0, opt_k = 0, rounds = 100;
    unsigned seed = 0;

    auto* solve = app.add_subcommand("solve", "print per-vertex winners");
    solve->add_option("game", game_path)->required();
    solve->add_option("--method", method)
        ->check(CLI::IsMember({"zielonka", "scw", "treedepth", "auto"}));
    solve->add_option("--forest", forest_path);
    solve->add_option("--treemodel", tm_path);
    solve->add_option("--max-k", max_k);
    solve->add_option("--out", out_path);
    solve->add_option("--dot", dot_path);

    auto* td = app.add_subcommand("treedepth", "print the arena's tree-depth");
    td->add_option("game", game_path)->required();

    auto* forest_cmd = app.add_subcommand("forest", "emit an elimination forest");
    forest_cmd->add_option("game", game_path)->required();
    forest_cmd->add_option("--max-k", max_k);
    forest_cmd->add_option("--out", out_path);
    forest_cmd->add_option("--dot", dot_path);

    auto* reduce_cmd = app.add_subcommand("reduce", "emit the expanded game, its tree-model, and the copy map");
    reduce_cmd->add_option("game", game_path)->required();
    reduce_cmd->add_option("--forest", forest_path)->required();
    reduce_cmd->add_option("--out", out_path);

    auto* induce = app.add_subcommand("induce", "convert a tree-model to a game file (ranks 0)");
    induce->add_option("treemodel", tm_path)->required();
    induce->add_option("--out", out_path);
    induce->add_option("--dot", dot_path);

    auto* emitc = app.add_subcommand("emit-circuit", "emit the solver circuit for (n, d, k)");
    emitc->add_option("--n", opt_n)->required();
    emitc->add_option("--d", opt_d)->required();
    emitc->add_option("--k", opt_k)->required();
    emitc->add_option("--out", out_path);

    auto* evalc = app.add_subcommand("eval-circuit", "evaluate a circuit on a 0/1 input string");
    evalc->add_option("circuit", circuit_path)->required();
    evalc->add_option("--bits", bits)->required();
    evalc->add_option("--out", out_path);

    auto* validate = app.add_subcommand("validate", "check a game, tree-model, or forest file");
    validate->add_option("file", game_path)->required();
    validate->add_option("--dot", dot_path);

    auto* selftest = app.add_subcommand("selftest", "run the randomized cross-check suites");
    selftest->add_option("--seed", seed);
    selftest->add_option("--rounds", rounds);

    std::vector<const char*> argv = {"pgtd"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (solve->parsed()) {
            ParityGame game = parse_pg(read_file(game_path));
            maybe_dot(dot_path, arena_dot(game));
            WinnerPartition winners;
            if (method == "zielonka") {
                winners = solve_zielonka(game);
            } else if (method == "scw") {
                if (tm_path.empty()) throw std::runtime_error("--method scw needs --treemodel");
                winners = solve_scw(game, parse_tm(read_file(tm_path)));
            } else if (method == "treedepth") {
                if (!forest_path.empty())
                    winners = solve_treedepth(game, parse_forest(read_file(forest_path)));
                else
                    winners = solve_treedepth(game);
            } else {
                auto forest = game.size() <= 20 ? find_forest(game.arena, max_k) : std::nullopt;
                winners = forest ? solve_treedepth(game, *forest) : solve_zielonka(game);
            }
            emit(winners_text(winners), out_path, out);
        } else if (td->parsed()) {
            ParityGame game = parse_pg(read_file(game_path));
            out << tree_depth(game.arena) << '\n';
        } else if (forest_cmd->parsed()) {
            ParityGame game = parse_pg(read_file(game_path));
            auto forest = find_forest(game.arena, max_k);
            if (!forest)
                throw std::runtime_error("tree-depth exceeds " + std::to_string(max_k));
            maybe_dot(dot_path, forest_dot(*forest));
            emit(serialize_forest(*forest), out_path, out);
        } else if (reduce_cmd->parsed()) {
            ParityGame game = parse_pg(read_file(game_path));
            EliminationForest forest = parse_forest(read_file(forest_path));
            ReductionResult result = reduce(game, forest);
            std::ostringstream map;
            for (size_t i = 0; i < result.copies.size(); ++i)
                map << i << ' '
                    << (result.copies[i].kind == CopyId::Kind::kChoose ? "choose" : "execute")
                    << ' ' << result.copies[i].original << ' ' << result.copies[i].group << '\n';
            if (out_path.empty()) {
                out << "# reduced game\n" << serialize_pg(result.reduced);
                out << "# tree-model\n" << serialize_tm(result.tm);
                out << "# copy map\n" << map.str();
            } else {
                emit(serialize_pg(result.reduced), out_path + ".pg", out);
                emit(serialize_tm(result.tm), out_path + ".tm", out);
                emit(map.str(), out_path + ".map", out);
            }
        } else if (induce->parsed()) {
            TreeModel tm = parse_tm(read_file(tm_path));
            maybe_dot(dot_path, treemodel_dot(tm));
            auto [arena, coloring] = induce_arena(tm);
            ParityGame game;
            game.arena = std::move(arena);
            game.rank.assign(game.arena.size(), 0);
            emit(serialize_pg(game), out_path, out);
        } else if (emitc->parsed()) {
            emit(serialize_circuit(emit_scw_circuit(opt_n, opt_d, opt_k)), out_path, out);
        } else if (evalc->parsed()) {
            Circuit circuit = parse_circuit(read_file(circuit_path));
            std::vector<uint8_t> input;
            for (char ch : bits) {
                if (ch != '0' && ch != '1') throw std::runtime_error("--bits must be a 0/1 string");
                input.push_back(ch == '1');
            }
            std::vector<uint8_t> values = eval_circuit(circuit, input);
            std::vector<std::pair<std::string, int>> outputs = circuit.outputs();
            std::sort(outputs.begin(), outputs.end());
            std::ostringstream s;
            for (const auto& [label, gate] : outputs)
                s << label << ' ' << int(values[gate]) << '\n';
            emit(s.str(), out_path, out);
        } else if (validate->parsed()) {
            std::string text = read_file(game_path);
            std::string kind;
            if (game_path.ends_with(".pg")) {
                ParityGame g = parse_pg(text);
                maybe_dot(dot_path, arena_dot(g));
                kind = "game";
            } else if (game_path.ends_with(".tm")) {
                TreeModel tm = parse_tm(text);
                maybe_dot(dot_path, treemodel_dot(tm));
                kind = "treemodel";
            } else if (game_path.ends_with(".ef")) {
                EliminationForest f = parse_forest(text);
                f.depths();
                maybe_dot(dot_path, forest_dot(f));
                kind = "forest";
            } else {
                try {
                    parse_pg(text);
                    kind = "game";
                } catch (const std::exception&) {
                    try {
                        parse_tm(text);
                        kind = "treemodel";
                    } catch (const std::exception&) {
                        parse_forest(text).depths();
                        kind = "forest";
                    }
                }
            }
            out << "ok " << kind << '\n';
        } else if (selftest->parsed()) {
            std::mt19937 rng(seed);
            int scw_ok = 0;
            for (int i = 0; i < rounds; ++i) {
                int leaves = 1 + rand_below(rng, 8);
                int colors = 1 + rand_below(rng, 3);
                int height = leaves == 1 ? rand_below(rng, 4) : 1 + rand_below(rng, 3);
                TreeModel tm = random_tree_model(rng, leaves, colors, height);
                ParityGame game = random_game_for(rng, tm, 1 + rand_below(rng, 4));
                if (solve_scw(game, tm) == solve_zielonka(game)) ++scw_ok;
            }
            out << "scw-agreement " << scw_ok << '/' << rounds << '\n';
            int td_ok = 0;
            for (int i = 0; i < rounds; ++i) {
                int n = 1 + rand_below(rng, 7);
                EliminationForest forest = random_forest(rng, n, rand_below(rng, 4));
                ParityGame game =
                    random_game_on_forest(rng, forest, 1 + rand_below(rng, 4), 40);
                if (solve_treedepth(game, forest) == solve_zielonka(game)) ++td_ok;
            }
            out << "treedepth-agreement " << td_ok << '/' << rounds << '\n';
            if (scw_ok != rounds || td_ok != rounds) {
                err << "error: selftest found disagreements\n";
                return 1;
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace pgtd
