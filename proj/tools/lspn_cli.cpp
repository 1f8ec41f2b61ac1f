#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "lspn/expr.hpp"
#include "lspn/firing.hpp"
#include "lspn/io.hpp"
#include "lspn/net.hpp"
#include "lspn/statespace.hpp"
#include "lspn/translate.hpp"

namespace {

using namespace lspn;

// Exit codes: 0 ok/equivalent, 1 failed check (invalid net, translation
// rejection, not-equivalent, not enabled), 2 usage or input errors,
// 3 state bound exceeded.
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kError = 2;
constexpr int kBound = 3;

// A negative result of the requested check, as opposed to bad input.
struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_dual(const Net& net) {
    return net.net_class() == NetClass::SPN || net.net_class() == NetClass::LSPN;
}

std::string label(const Net& net, const DualMarking& m) {
    return is_dual(net) ? to_string(m) : to_string(positive_projection(m));
}

int to_count(const std::string& tok) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
        if (used != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad count '" + tok + "' in marking");
    }
}

Marking parse_counts(const std::string& text) {
    Marking m;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) m.push_back(to_count(tok));
    if (m.empty()) throw std::invalid_argument("empty marking");
    return m;
}

// -m "a,b,c" gives positive counts (negative side zero); signed nets also
// accept "a,b,c/d,e,f" as positive/negative. Falls back to the file marking.
DualMarking resolve_marking(const NetDocument& doc, const std::string& m_arg,
                            const std::string& path) {
    DualMarking m;
    if (!m_arg.empty()) {
        auto slash = m_arg.find('/');
        if (slash != std::string::npos) {
            if (!is_dual(doc.net))
                throw std::invalid_argument("markings of unsigned nets have no negative part");
            m.pos = parse_counts(m_arg.substr(0, slash));
            m.neg = parse_counts(m_arg.substr(slash + 1));
        } else {
            m.pos = parse_counts(m_arg);
            m.neg = Marking(m.pos.size(), 0);
        }
    } else if (doc.dual) {
        m = *doc.dual;
    } else if (doc.marking) {
        m = embed_plain(*doc.marking);
    } else {
        throw std::invalid_argument(path + ": file carries no marking and -m was not given");
    }
    if (auto problem = marking_problem(doc.net, m)) throw std::invalid_argument("marking: " + *problem);
    return m;
}

NetDocument load_checked(const std::string& path) {
    NetDocument doc = load_net(path);
    auto violations = validate_net(doc.net);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << path << ": invalid net";
        for (const auto& v : violations) msg << "\n  [" << v.code << "] " << v.message;
        throw Failure(msg.str());
    }
    return doc;
}

int cmd_validate(const std::string& path) {
    NetDocument doc = load_net(path);
    const Net& net = doc.net;
    auto violations = validate_net(net);
    if (violations.empty()) {
        std::cout << "ok: " << to_string(net.net_class()) << ", " << net.place_count()
                  << " places, " << net.transition_count() << " transitions, " << net.arcs().size()
                  << " arcs\n";
        return kOk;
    }
    std::cout << "invalid: " << violations.size()
              << (violations.size() == 1 ? " problem\n" : " problems\n");
    for (const auto& v : violations) std::cout << "  [" << v.code << "] " << v.message << "\n";
    return kFailed;
}

int cmd_dnf(const std::string& text) {
    LogicExpr e = parse_expr(text);
    std::cout << to_string(to_dnf(e)) << "\n";
    auto sup = support(e);
    if (sup.empty()) {
        std::cout << "profile: constant expression\n";
        return kOk;
    }
    auto prof = polarity_profile(minterm_expansion(e, sup), sup);
    std::cout << "profile: ";
    for (std::size_t i = 0; i < sup.size(); ++i)
        std::cout << (i ? ", " : "") << sup[i] << ": " << to_string(prof[i]);
    std::cout << "\n";
    return kOk;
}

int cmd_fire(const std::string& path, const std::string& t_id, const std::string& m_arg) {
    NetDocument doc = load_checked(path);
    const Net& net = doc.net;
    auto t = net.transition_index(t_id);
    if (!t) throw std::invalid_argument("no transition '" + t_id + "'");
    DualMarking m = resolve_marking(doc, m_arg, path);
    std::string at = label(net, m);
    auto outs = transition_outcomes(net, *t, m);
    if (outs.empty()) {
        if (net.net_class() == NetClass::SPN && spn_enabled(net, *t, m))
            std::cout << "transition '" << t_id << "' is enabled at " << at
                      << " but cannot fire: no output arc carries the required sign\n";
        else
            std::cout << "transition '" << t_id << "' is not enabled at " << at << "\n";
        return kFailed;
    }
    std::cout << "transition '" << t_id << "' at " << at << ": " << outs.size()
              << (outs.size() == 1 ? " outcome\n" : " outcomes\n");
    for (const auto& o : outs) {
        std::cout << "  " << o.index << ": " << label(net, o.marking);
        if (!o.chosen.empty()) {
            std::cout << "  chosen={";
            for (std::size_t i = 0; i < o.chosen.size(); ++i)
                std::cout << (i ? "," : "") << net.place_id(o.chosen[i]);
            std::cout << "}";
        }
        std::cout << "\n";
    }
    return kOk;
}

void print_tree(const Net& net, const ReachTree& tree, const Lts& lts, std::size_t node,
                int depth) {
    const ReachTreeNode& n = tree.nodes[node];
    std::cout << std::string(static_cast<std::size_t>(depth) * 2, ' ');
    if (n.via)
        std::cout << net.transition(n.via->transition).id << "/" << n.via->outcome << " -> ";
    std::cout << label(net, lts.states[n.state]);
    if (n.old)
        std::cout << "  [old]";
    else if (n.dead_end)
        std::cout << "  [dead end]";
    std::cout << "\n";
    for (std::size_t c : n.children) print_tree(net, tree, lts, c, depth + 1);
}

int cmd_reach(const std::string& path, const std::string& m_arg, std::size_t max_states,
              const std::string& dot_path, bool tree_wanted) {
    NetDocument doc = load_checked(path);
    const Net& net = doc.net;
    DualMarking m0 = resolve_marking(doc, m_arg, path);
    Lts lts = explore(net, m0, max_states);
    std::cout << "reachable: " << lts.states.size() << " states, " << lts.edges.size()
              << (lts.complete ? " edges, complete\n" : " edges, truncated\n");
    if (tree_wanted && !lts.complete) {
        std::cout << "cannot build the tree: exploration truncated; raise --max-states\n";
        return kBound;
    }
    std::optional<ReachTree> tree;
    if (tree_wanted) tree = reach_tree(lts);
    if (tree_wanted)
        print_tree(net, *tree, lts, 0, 0);
    else
        for (std::size_t i = 0; i < lts.states.size(); ++i)
            std::cout << "  s" << i << ": " << label(net, lts.states[i])
                      << (i == lts.initial ? "  (initial)\n" : "\n");
    if (!dot_path.empty()) {
        std::ofstream out(dot_path, std::ios::binary);
        if (!out) throw IoError("cannot write '" + dot_path + "'");
        out << (tree ? export_dot(net, *tree, lts) : export_dot(net, lts));
        if (!out.flush()) throw IoError("cannot write '" + dot_path + "'");
        std::cout << "wrote " << dot_path << "\n";
    }
    return lts.complete ? kOk : kBound;
}

int cmd_translate(const std::string& path, const std::string& out_path, bool explain) {
    NetDocument doc = load_net(path);
    if (!doc.marking) throw std::invalid_argument(path + ": file carries no marking");
    TranslationReport rep = translate_lpn(doc.net, *doc.marking);
    for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
    if (!rep.ok()) {
        for (const auto& r : rep.rejections) std::cout << "cannot translate: " << r << "\n";
        return kFailed;
    }
    if (explain) {
        for (const auto& tr : rep.transitions) {
            if (tr.kind == TransitionKind::Traditional) continue;
            std::cout << tr.id << " (" << to_string(tr.kind) << "): dnf: " << tr.dnf << "\n  ";
            for (std::size_t i = 0; i < tr.profile_places.size(); ++i)
                std::cout << (i ? ", " : "") << tr.profile_places[i] << ": "
                          << to_string(tr.profile[i]);
            std::cout << "\n  arcs: ";
            for (std::size_t i = 0; i < tr.arcs.size(); ++i)
                std::cout << (i ? ", " : "") << to_string(tr.arcs[i]);
            std::cout << "\n";
        }
    }
    NetDocument out{*rep.lspn, std::nullopt, rep.initial};
    if (!out_path.empty()) {
        save_net(out_path, out);
        std::cout << "wrote " << out_path << "\n";
    } else {
        std::cout << to_json_text(out);
    }
    return kOk;
}

int cmd_check_equiv(const std::string& path, const std::string& translated_path,
                    std::size_t max_states) {
    NetDocument doc = load_checked(path);
    if (doc.net.net_class() != NetClass::LPN)
        throw std::invalid_argument(path + ": check-equiv expects a net of class lpn");
    if (!doc.marking) throw std::invalid_argument(path + ": file carries no marking");
    std::optional<Net> lspn;
    DualMarking m0d;
    if (!translated_path.empty()) {
        NetDocument t = load_checked(translated_path);
        if (t.net.net_class() != NetClass::LSPN)
            throw std::invalid_argument(translated_path + ": --translated expects class lspn");
        m0d = t.dual ? *t.dual : assign_initial_tokens(doc.net, *doc.marking, t.net);
        lspn = std::move(t.net);
    } else {
        TranslationReport rep = translate_lpn(doc.net, *doc.marking);
        for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
        if (!rep.ok()) {
            for (const auto& r : rep.rejections) std::cout << "cannot translate: " << r << "\n";
            return kFailed;
        }
        m0d = *rep.initial;
        lspn = std::move(*rep.lspn);
    }
    EquivalenceVerdict v = check_equivalence(doc.net, *doc.marking, *lspn, m0d, max_states);
    switch (v.result) {
        case EquivalenceVerdict::Result::Equivalent:
            std::cout << "equivalent: " << v.lpn_states << " plain states match " << v.lspn_states
                      << " signed states"
                      << (v.reverse_holds ? "" : " (some signed edges have no plain counterpart)")
                      << "\n";
            for (const auto& [pm, dm] : v.witness)
                std::cout << "  " << to_string(pm) << " ~ " << to_string(dm) << "\n";
            return kOk;
        case EquivalenceVerdict::Result::NotEquivalent:
            std::cout << "not-equivalent";
            if (v.counterexample)
                std::cout << " [" << v.counterexample->kind << "]: " << v.counterexample->detail;
            std::cout << "\n";
            return kFailed;
        case EquivalenceVerdict::Result::Unknown:
            break;
    }
    std::cout << "unknown: state bound " << max_states << " exceeded\n";
    return kBound;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Work with plain, signed, and logic Petri nets"};
    app.require_subcommand(1);

    std::string file, expr_text, t_id, m_arg, out_path, dot_path, translated_path;
    std::size_t max_states = kDefaultMaxStates;
    bool tree_wanted = false, explain = false;

    auto* c_validate = app.add_subcommand("validate", "Check a net file for structural problems");
    c_validate->add_option("file", file, "net file (json)")->required();

    auto* c_dnf =
        app.add_subcommand("dnf", "Print the disjunctive normal form of a boolean expression");
    c_dnf->add_option("expr", expr_text, "expression, e.g. \"p1 & (p2 | !p3)\"")->required();

    auto* c_fire = app.add_subcommand("fire", "List the outcomes of firing one transition");
    c_fire->add_option("file", file, "net file (json)")->required();
    c_fire->add_option("-t,--transition", t_id, "transition id")->required();
    c_fire->add_option("-m,--marking", m_arg,
                       "counts 'a,b,c', or 'pos counts/neg counts' for signed nets "
                       "(default: the file's marking)");

    auto* c_reach = app.add_subcommand("reach", "Explore the reachable markings");
    c_reach->add_option("file", file, "net file (json)")->required();
    c_reach->add_option("-m,--marking", m_arg, "start marking (default: the file's marking)");
    c_reach->add_option("--max-states", max_states, "state bound for the exploration");
    c_reach->add_option("--dot", dot_path, "write the graph to this file in graphviz format");
    c_reach->add_flag("--tree", tree_wanted, "unfold into a reachability tree");

    auto* c_translate =
        app.add_subcommand("translate", "Translate a logic net into a signed logic net");
    c_translate->add_option("file", file, "net file (json, class lpn, with marking)")->required();
    c_translate->add_option("-o,--output", out_path, "write the result here instead of stdout");
    c_translate->add_flag("--explain", explain, "show the guard profile behind each arc choice");

    auto* c_check = app.add_subcommand(
        "check-equiv", "Check that a logic net and its signed translation reach the same states");
    c_check->add_option("file", file, "net file (json, class lpn, with marking)")->required();
    c_check->add_option("--translated", translated_path,
                        "compare against this signed net instead of translating");
    c_check->add_option("--max-states", max_states, "state bound for both explorations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kError;
    }

    try {
        if (c_validate->parsed()) return cmd_validate(file);
        if (c_dnf->parsed()) return cmd_dnf(expr_text);
        if (c_fire->parsed()) return cmd_fire(file, t_id, m_arg);
        if (c_reach->parsed()) return cmd_reach(file, m_arg, max_states, dot_path, tree_wanted);
        if (c_translate->parsed()) return cmd_translate(file, out_path, explain);
        if (c_check->parsed()) return cmd_check_equiv(file, translated_path, max_states);
    } catch (const Failure& e) {
        std::cout << e.what() << "\n";
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
