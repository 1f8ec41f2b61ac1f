#include "lspn/io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "lspn/expr.hpp"

namespace lspn {

namespace {

const nlohmann::json* find(const nlohmann::json& j, std::string_view key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

const nlohmann::json& require(const nlohmann::json& j, std::string_view key) {
    const auto* v = find(j, key);
    if (!v) throw IoError("missing field '" + std::string(key) + "'");
    return *v;
}

std::string require_string(const nlohmann::json& j, std::string_view key) {
    const auto& v = require(j, key);
    if (!v.is_string()) throw IoError("field '" + std::string(key) + "' must be a string");
    return v.get<std::string>();
}

void check_fields(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                  const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (std::string_view k : allowed) known = known || it.key() == k;
        if (!known) throw IoError(where + ": unknown field '" + it.key() + "'");
    }
}

NetClass class_from(const std::string& s) {
    if (s == "pn") return NetClass::PN;
    if (s == "spn") return NetClass::SPN;
    if (s == "lpn") return NetClass::LPN;
    if (s == "lspn") return NetClass::LSPN;
    throw IoError("unknown net class '" + s + "'");
}

Capacity capacity_from(const std::string& s) {
    if (s == "cap-1") return Capacity::CapOne;
    if (s == "unbounded") return Capacity::Unbounded;
    throw IoError("unknown capacity '" + s + "'");
}

TransitionKind kind_from(const std::string& s, const std::string& where) {
    if (s == "traditional") return TransitionKind::Traditional;
    if (s == "logic-input") return TransitionKind::LogicInput;
    if (s == "logic-output") return TransitionKind::LogicOutput;
    throw IoError(where + ": unknown kind '" + s + "'");
}

Marking marking_from(const nlohmann::json& v, const std::string& where) {
    if (!v.is_array()) throw IoError(where + " must be an array of integers");
    Marking m;
    for (const auto& e : v) {
        if (!e.is_number_integer()) throw IoError(where + " must be an array of integers");
        m.push_back(e.get<int>());
    }
    return m;
}

}  // namespace

nlohmann::json net_to_json(const NetDocument& doc) {
    const Net& net = doc.net;
    nlohmann::json j;
    j["version"] = "1";
    j["class"] = to_string(net.net_class());
    j["capacity"] = to_string(net.capacity());
    j["places"] = net.places();

    auto transitions = nlohmann::json::array();
    for (const Transition& t : net.transitions()) {
        nlohmann::json jt;
        jt["id"] = t.id;
        if (t.kind != TransitionKind::Traditional) jt["kind"] = to_string(t.kind);
        if (t.guard) jt["guard"] = t.guard_text;
        transitions.push_back(std::move(jt));
    }
    j["transitions"] = std::move(transitions);

    auto arcs = nlohmann::json::array();
    for (const Arc& a : net.arcs()) {
        nlohmann::json ja;
        const std::string& pid = net.place_id(a.place);
        const std::string& tid = net.transition(a.transition).id;
        ja["from"] = a.place_to_transition ? pid : tid;
        ja["to"] = a.place_to_transition ? tid : pid;
        if (a.sign == ArcSign::Minus) ja["sign"] = "-";
        if (a.weight != 1) ja["weight"] = a.weight;
        arcs.push_back(std::move(ja));
    }
    j["arcs"] = std::move(arcs);

    if (doc.dual) {
        nlohmann::json jm;
        jm["negative"] = doc.dual->neg;
        jm["positive"] = doc.dual->pos;
        j["marking"] = std::move(jm);
    } else if (doc.marking) {
        j["marking"] = *doc.marking;
    }
    return j;
}

NetDocument net_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw IoError("net document must be a JSON object");
    check_fields(j, {"version", "class", "capacity", "places", "transitions", "arcs", "marking"},
                 "document");
    std::string version = require_string(j, "version");
    if (version != "1") throw IoError("unsupported version '" + version + "'");
    NetClass cls = class_from(require_string(j, "class"));
    Capacity cap = capacity_from(require_string(j, "capacity"));

    const auto& jplaces = require(j, "places");
    if (!jplaces.is_array()) throw IoError("field 'places' must be an array of strings");
    std::vector<std::string> places;
    for (const auto& v : jplaces) {
        if (!v.is_string()) throw IoError("field 'places' must be an array of strings");
        places.push_back(v.get<std::string>());
    }

    const auto& jtrans = require(j, "transitions");
    if (!jtrans.is_array()) throw IoError("field 'transitions' must be an array of objects");
    std::vector<Transition> transitions;
    for (const auto& v : jtrans) {
        if (!v.is_object()) throw IoError("field 'transitions' must be an array of objects");
        std::string id = require_string(v, "id");
        std::string where = "transition '" + id + "'";
        check_fields(v, {"id", "kind", "guard"}, where);
        Transition t;
        t.id = std::move(id);
        if (const auto* k = find(v, "kind")) {
            if (!k->is_string()) throw IoError(where + ": field 'kind' must be a string");
            t.kind = kind_from(k->get<std::string>(), where);
        }
        if (const auto* g = find(v, "guard")) {
            if (!g->is_string()) throw IoError(where + ": field 'guard' must be a string");
            try {
                t.guard = parse_expr(g->get<std::string>());
            } catch (const ParseError& e) {
                throw IoError(where + ": guard: " + e.what());
            }
            t.guard_text = to_string(*t.guard);
        }
        transitions.push_back(std::move(t));
    }

    std::unordered_map<std::string, std::size_t> place_ix, trans_ix;
    for (std::size_t i = 0; i < places.size(); ++i) place_ix.emplace(places[i], i);
    for (std::size_t i = 0; i < transitions.size(); ++i) trans_ix.emplace(transitions[i].id, i);

    const auto& jarcs = require(j, "arcs");
    if (!jarcs.is_array()) throw IoError("field 'arcs' must be an array of objects");
    std::vector<Arc> arcs;
    std::size_t arc_no = 0;
    for (const auto& v : jarcs) {
        std::string where = "arc " + std::to_string(arc_no++);
        if (!v.is_object()) throw IoError("field 'arcs' must be an array of objects");
        check_fields(v, {"from", "to", "sign", "weight"}, where);
        std::string from = require_string(v, "from");
        std::string to = require_string(v, "to");
        ArcSign sign = ArcSign::Plus;
        if (const auto* s = find(v, "sign")) {
            std::string text = s->is_string() ? s->get<std::string>() : "";
            if (text != "+" && text != "-")
                throw IoError(where + ": field 'sign' must be \"+\" or \"-\"");
            if (text == "-") sign = ArcSign::Minus;
        }
        int weight = 1;
        if (const auto* w = find(v, "weight")) {
            if (!w->is_number_integer() || w->get<int>() < 1)
                throw IoError(where + ": field 'weight' must be a positive integer");
            weight = w->get<int>();
        }
        bool fp = place_ix.count(from) > 0, ft = trans_ix.count(from) > 0;
        bool tp = place_ix.count(to) > 0, tt = trans_ix.count(to) > 0;
        if (fp && ft)
            throw IoError(where + ": '" + from + "' names both a place and a transition");
        if (tp && tt) throw IoError(where + ": '" + to + "' names both a place and a transition");
        if (!fp && !ft) throw IoError(where + ": unknown endpoint '" + from + "'");
        if (!tp && !tt) throw IoError(where + ": unknown endpoint '" + to + "'");
        if (fp && tt)
            arcs.push_back(in_arc(place_ix[from], trans_ix[to], sign, weight));
        else if (ft && tp)
            arcs.push_back(out_arc(trans_ix[from], place_ix[to], sign, weight));
        else
            throw IoError(where + ": '" + from + "' -> '" + to +
                          "' does not connect a place and a transition");
    }

    NetDocument doc{Net(cls, cap, std::move(places), std::move(transitions), std::move(arcs)),
                    std::nullopt, std::nullopt};

    if (const auto* m = find(j, "marking")) {
        bool signed_net = cls == NetClass::SPN || cls == NetClass::LSPN;
        if (m->is_object()) {
            if (!signed_net) throw IoError("marking for an unsigned net must be a plain array");
            check_fields(*m, {"negative", "positive"}, "marking");
            DualMarking dm;
            dm.neg = marking_from(require(*m, "negative"), "marking field 'negative'");
            dm.pos = marking_from(require(*m, "positive"), "marking field 'positive'");
            if (auto problem = marking_problem(doc.net, dm)) throw IoError("marking: " + *problem);
            doc.dual = std::move(dm);
        } else if (m->is_array()) {
            if (signed_net)
                throw IoError(
                    "marking for a signed net must be an object with 'negative' and 'positive' "
                    "arrays");
            Marking pm = marking_from(*m, "field 'marking'");
            if (auto problem = marking_problem(doc.net, embed_plain(pm)))
                throw IoError("marking: " + *problem);
            doc.marking = std::move(pm);
        } else {
            throw IoError("field 'marking' must be an array or an object");
        }
    }
    return doc;
}

std::string to_json_text(const NetDocument& doc) { return net_to_json(doc).dump(2) + "\n"; }

NetDocument load_net(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    try {
        return net_from_json(j);
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

void save_net(const std::filesystem::path& path, const NetDocument& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << to_json_text(doc);
    out.flush();
    if (!out) throw IoError("cannot write '" + path.string() + "'");
}

namespace {

std::string state_label(const Lts& lts, std::size_t i) {
    return lts.dual ? to_string(lts.states[i]) : to_string(positive_projection(lts.states[i]));
}

}  // namespace

std::string export_dot(const Net& net, const Lts& lts) {
    std::ostringstream out;
    out << "digraph lts {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
        out << "  s" << i << " [label=\"" << state_label(lts, i) << "\"";
        if (i == lts.initial) out << ", penwidth=2";
        out << "];\n";
    }
    for (const LtsEdge& e : lts.edges) {
        out << "  s" << e.src << " -> s" << e.dst << " [label=\""
            << net.transition(e.transition).id << "/" << e.outcome << "\"];\n";
    }
    if (!lts.complete) out << "  // exploration truncated at " << lts.states.size() << " states\n";
    out << "}\n";
    return out.str();
}

std::string export_dot(const Net& net, const ReachTree& tree, const Lts& lts) {
    std::ostringstream out;
    out << "digraph reach_tree {\n";
    out << "  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const ReachTreeNode& n = tree.nodes[i];
        out << "  n" << i << " [label=\"" << state_label(lts, n.state) << "\"";
        if (n.old) out << ", style=dashed";
        if (n.dead_end) out << ", peripheries=2";
        out << "];\n";
    }
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        for (std::size_t c : tree.nodes[i].children) {
            const auto& via = tree.nodes[c].via;
            out << "  n" << i << " -> n" << c;
            if (via)
                out << " [label=\"" << net.transition(via->transition).id << "/" << via->outcome
                    << "\"]";
            out << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace lspn
