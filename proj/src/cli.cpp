#include "spenum/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>
#include <json.hpp>

#include "spenum/canonical.hpp"
#include "spenum/enumerate.hpp"
#include "spenum/input.hpp"
#include "spenum/oracle.hpp"
#include "spenum/semioriented.hpp"

namespace spenum::cli {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<DecompTree> load(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError("cannot open " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    auto trees = parse_instances(text);
    if (trees.empty()) throw InputError(path + ": no instances");
    return trees;
}

// Sorted "u-v" tokens, each token with its endpoints in label order.
std::vector<std::string> edge_tokens(const LabeledGraph& g, const EdgeSet& es) {
    std::vector<std::string> out;
    for (auto m : es.members()) {
        const auto& e = g.edges()[m];
        auto a = g.label(e.u).str();
        auto b = g.label(e.v).str();
        if (b < a) std::swap(a, b);
        out.push_back(a + "-" + b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += sep;
        s += parts[i];
    }
    return s;
}

struct Options {
    std::string file;
    std::string mode = "oriented";
    bool near = false;
    std::string format = "text";
    std::size_t limit = oracle::kDefaultVertexLimit;
    std::uint64_t seed = 1;
    unsigned depth = 4;
    unsigned children = 3;
    double leaf_bias = 0.3;
};

void check_mode(const Options& o) {
    if (o.near && o.mode == "semioriented")
        throw CLI::ValidationError("--near", "near trees are only available for oriented and total modes");
}

int cmd_parse(const Options& o, std::ostream& out) {
    for (const auto& t : load(o.file)) out << serialize_sp(t) << '\n';
    return kOk;
}

int cmd_code(const Options& o, std::ostream& out) {
    for (const auto& t : load(o.file)) {
        out << "canonical " << canonical_code(t).to_string() << '\n';
        out << "reversal " << reversal_code(t).to_string() << '\n';
    }
    return kOk;
}

int cmd_count(const Options& o, std::ostream& out) {
    const auto kind = o.near ? TreeKind::Near : TreeKind::Spanning;
    for (const auto& t : load(o.file)) {
        BigInt n;
        if (o.mode == "semioriented") {
            n = count_semioriented(SemiorientedSP{t});
        } else {
            auto c = o.mode == "total" ? count_total(t) : count_oriented(OrientedSP{t});
            n = kind == TreeKind::Spanning ? c.spanning : c.near;
        }
        out << n << '\n';
    }
    return kOk;
}

class Writer {
public:
    Writer(std::ostream& out, const Options& o) : out_(out), o_(o) {}

    void write(const LabeledGraph& g, std::uint64_t index, const EdgeSet& es) {
        auto tokens = edge_tokens(g, es);
        if (o_.format == "records") {
            nlohmann::ordered_json rec;
            rec["index"] = index;
            rec["edges"] = tokens;
            rec["mode"] = o_.mode;
            rec["kind"] = o_.near ? "near" : "spanning";
            out_ << rec.dump() << '\n';
        } else {
            out_ << join(tokens, ",") << '\n';
        }
    }

private:
    std::ostream& out_;
    const Options& o_;
};

int cmd_enumerate(const Options& o, std::ostream& out) {
    const auto kind = o.near ? TreeKind::Near : TreeKind::Spanning;
    Writer w(out, o);
    bool first = true;
    for (const auto& t : load(o.file)) {
        if (!first) out << '\n';
        first = false;
        auto g = underlying_graph(t);
        std::uint64_t i = 0;
        if (o.mode == "oriented") {
            TreeStream stream(OrientedSP{t}, kind);
            while (auto es = stream.next()) w.write(g, i++, *es);
        } else {
            auto list = o.mode == "total" ? total_trees(t, kind) : semioriented_spanning(SemiorientedSP{t});
            for (const auto& es : list) w.write(g, i++, es);
        }
    }
    return kOk;
}

// Checks that `list` holds exactly one member of every orbit.
std::string orbit_mismatch(const oracle::OrbitReport& report, const TreeList& list) {
    std::unordered_map<EdgeSet, std::size_t, EdgeSetHash> orbit_of;
    for (std::size_t o = 0; o < report.orbits.size(); ++o)
        for (const auto& m : report.orbits[o].members) orbit_of.emplace(m, o);
    std::vector<int> hits(report.orbits.size(), 0);
    for (const auto& es : list) {
        auto it = orbit_of.find(es);
        if (it == orbit_of.end()) return "emitted set outside every orbit";
        if (++hits[it->second] > 1) return "orbit " + std::to_string(it->second) + " emitted twice";
    }
    for (std::size_t o = 0; o < hits.size(); ++o)
        if (!hits[o]) return "orbit " + std::to_string(o) + " missing";
    return {};
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    bool all_ok = true;
    for (const auto& t : load(o.file)) {
        auto g = underlying_graph(t);
        if (g.vertex_count() > o.limit) {
            err << "instance has " << g.vertex_count() << " vertices, above --limit " << o.limit << '\n';
            return kInvalid;
        }
        const auto s = g.index_of(t.source);
        const auto tt = g.index_of(t.target);
        bool ok = true;
        auto check = [&](const std::string& name, bool pass, const std::string& detail = {}) {
            out << (pass ? "PASS " : "FAIL ") << name;
            if (!pass && !detail.empty()) out << ": " << detail;
            out << '\n';
            ok = ok && pass;
        };

        auto all = oracle::all_spanning_trees(g, o.limit);
        auto sep = oracle::all_separating_forests(g, s, tt, o.limit);
        auto aut_or = oracle::automorphisms(g, oracle::FixBoth{s, tt}, o.limit);
        auto aut_semi = oracle::automorphisms(g, oracle::FixSet{s, tt}, o.limit);
        auto kirchhoff = oracle::kirchhoff_count(g);
        auto total = count_total(t);
        check("total spanning = kirchhoff", total.spanning == kirchhoff && kirchhoff == all.size());
        check("total near = separating forests", total.near == sep.size());

        auto [st, nt] = oriented_both(OrientedSP{t});
        auto oriented = count_oriented(OrientedSP{t});
        check("oriented count = enumeration", oriented.spanning == st.size() && oriented.near == nt.size());
        auto or_orbits = oracle::orbit_partition(all, aut_or, g);
        auto miss = orbit_mismatch(or_orbits, st);
        check("oriented spanning orbits", miss.empty(), miss);
        miss = orbit_mismatch(oracle::orbit_partition(sep, aut_or, g), nt);
        check("oriented near orbits", miss.empty(), miss);

        auto semi = semioriented_spanning(SemiorientedSP{t});
        auto semi_count = count_semioriented(SemiorientedSP{t});
        check("semioriented count = enumeration", semi_count == semi.size());
        auto semi_orbits = oracle::orbit_partition(all, aut_semi, g);
        miss = orbit_mismatch(semi_orbits, semi);
        check("semioriented orbits", miss.empty(), miss);
        check("burnside", oracle::burnside_count(all, aut_semi, g) == semi_orbits.orbits.size());

        const bool mirrored = mirror_pairing(t).has_value();
        const bool exchanges = aut_semi.size() == 2 * aut_or.size();
        check("mirror pairing matches terminal exchange", mirrored == exchanges);

        out << (ok ? "PASS" : "FAIL") << " (oriented=" << st.size() << " near=" << nt.size()
            << " semi=" << semi.size() << " total=" << all.size() << " aut_or=" << aut_or.size()
            << " aut_semi=" << aut_semi.size() << ")\n";
        all_ok = all_ok && ok;
    }
    return all_ok ? kOk : kVerifyFailed;
}

int cmd_random(const Options& o, std::ostream& out) {
    RandomSpParams p;
    p.seed = o.seed;
    p.max_depth = o.depth;
    p.max_children = o.children;
    p.leaf_bias = o.leaf_bias;
    out << serialize_sp(random_sp(p)) << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nonequivalent spanning trees of series-parallel graphs", "spenum"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::string> modes{"oriented", "semioriented", "total"};

    auto* parse = app.add_subcommand("parse", "Echo the normalized expression of each instance");
    parse->add_option("file", o.file, "Instance file, or - for stdin")->required();

    auto* count = app.add_subcommand("count", "Count trees");
    count->add_option("file", o.file)->required();
    count->add_option("--mode", o.mode)->check(CLI::IsMember(modes));
    count->add_flag("--near", o.near, "Count separating near trees");

    auto* enumerate = app.add_subcommand("enumerate", "List one tree per line");
    enumerate->add_option("file", o.file)->required();
    enumerate->add_option("--mode", o.mode)->check(CLI::IsMember(modes));
    enumerate->add_flag("--near", o.near);
    enumerate->add_option("--format", o.format)->check(CLI::IsMember({"text", "records"}));

    auto* verify = app.add_subcommand("verify", "Compare fast results with brute force");
    verify->add_option("file", o.file)->required();
    verify->add_option("--limit", o.limit, "Largest vertex count handed to the brute force");

    auto* random = app.add_subcommand("random", "Print a random instance");
    random->add_option("--seed", o.seed);
    random->add_option("--depth", o.depth);
    random->add_option("--children", o.children)->check(CLI::Range(2u, 64u));
    random->add_option("--leaf-bias", o.leaf_bias)->check(CLI::Range(0.0, 1.0));

    auto* code = app.add_subcommand("code", "Print canonical and reversal codes");
    code->add_option("file", o.file)->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        check_mode(o);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kUsage;
    }

    try {
        if (parse->parsed()) return cmd_parse(o, out);
        if (count->parsed()) return cmd_count(o, out);
        if (enumerate->parsed()) return cmd_enumerate(o, out);
        if (verify->parsed()) return cmd_verify(o, out, err);
        if (random->parsed()) return cmd_random(o, out);
        if (code->parsed()) return cmd_code(o, out);
    } catch (const ParseError& e) {
        err << "parse error at " << e.position() << ": " << e.what() << '\n';
        return kInvalid;
    } catch (const ValidationError& e) {
        err << e.what() << '\n';
        return kInvalid;
    } catch (const DecompositionError& e) {
        err << e.what() << '\n';
        return kInvalid;
    } catch (const InputError& e) {
        err << e.what() << '\n';
        return kInvalid;
    } catch (const std::length_error& e) {
        err << e.what() << '\n';
        return kInvalid;
    } catch (const std::overflow_error& e) {
        err << e.what() << '\n';
        return kInvalid;
    } catch (const oracle::LimitExceeded& e) {
        err << e.what() << '\n';
        return kInvalid;
    }
    return kUsage;
}

}  // namespace spenum::cli
