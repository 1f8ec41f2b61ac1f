#include "lspn/translate.hpp"

#include <algorithm>

namespace lspn {

TranslationReport translate_structure(const Net& lpn) {
    TranslationReport report;
    if (lpn.net_class() != NetClass::LPN) {
        report.rejections.push_back("input net has class " + to_string(lpn.net_class()) +
                                    ", expected lpn");
        return report;
    }
    std::vector<Violation> violations = validate_net(lpn);
    if (!violations.empty()) {
        for (const Violation& v : violations)
            report.rejections.push_back("invalid input net: " + v.message);
        return report;
    }

    std::vector<Transition> transitions;
    std::vector<Arc> arcs;
    for (std::size_t t = 0; t < lpn.transition_count(); ++t) {
        const Transition& tr = lpn.transition(t);
        TransitionTranslation rec;
        rec.id = tr.id;
        rec.kind = tr.kind;
        std::size_t first_arc = arcs.size();

        if (tr.kind == TransitionKind::Traditional) {
            for (std::size_t i : lpn.input_arcs(t)) {
                const Arc& a = lpn.arcs()[i];
                arcs.push_back(in_arc(a.place, t, ArcSign::Plus, a.weight));
            }
            for (std::size_t i : lpn.output_arcs(t)) {
                const Arc& a = lpn.arcs()[i];
                arcs.push_back(out_arc(t, a.place, ArcSign::Plus, a.weight));
            }
            transitions.push_back(traditional(tr.id));
        } else {
            bool guard_on_inputs = tr.kind == TransitionKind::LogicInput;
            const std::vector<std::size_t>& connected =
                guard_on_inputs ? lpn.preset(t) : lpn.postset(t);
            const LogicExpr& g = *tr.guard;

            rec.dnf = to_string(to_dnf(g, lpn.places()));

            std::vector<std::string> sup = support(g);
            std::vector<std::size_t> sup_idx;
            for (const std::string& name : sup) sup_idx.push_back(*lpn.place_index(name));
            std::sort(sup_idx.begin(), sup_idx.end());
            std::vector<std::string> sup_sorted;
            for (std::size_t p : sup_idx) sup_sorted.push_back(lpn.place_id(p));

            // Polarities come from the full expansion over the places that
            // matter, so an optional place shows up in both signs even when a
            // short DNF of the guard never negates it.
            Dnf expanded = minterm_expansion(g, sup_sorted);
            std::vector<Polarity> sup_profile = polarity_profile(expanded, sup_sorted);

            std::vector<Polarity> connected_profile;
            for (std::size_t p : connected) {
                auto it = std::find(sup_idx.begin(), sup_idx.end(), p);
                if (it == sup_idx.end()) {
                    connected_profile.push_back(Polarity::Absent);
                    report.warnings.push_back("place '" + lpn.place_id(p) +
                                              "' does not affect the expression of '" + tr.id +
                                              "'; no arc emitted for it");
                } else {
                    connected_profile.push_back(
                        sup_profile[static_cast<std::size_t>(it - sup_idx.begin())]);
                }
                rec.profile_places.push_back(lpn.place_id(p));
            }
            rec.profile = connected_profile;

            for (std::size_t k = 0; k < connected.size(); ++k) {
                std::size_t p = connected[k];
                Polarity pol = connected_profile[k];
                if (pol == Polarity::NegOnly) {
                    report.rejections.push_back("place '" + lpn.place_id(p) +
                                                "' occurs only negated in the expression of '" +
                                                tr.id + "'; no arc shape represents it");
                    continue;
                }
                if (pol == Polarity::Absent) continue;
                bool dual = pol == Polarity::Both;
                if (guard_on_inputs) {
                    arcs.push_back(in_arc(p, t, ArcSign::Plus));
                    if (dual) arcs.push_back(in_arc(p, t, ArcSign::Minus));
                } else {
                    arcs.push_back(out_arc(t, p, ArcSign::Plus));
                    if (dual) arcs.push_back(out_arc(t, p, ArcSign::Minus));
                }
            }
            if (guard_on_inputs)
                for (std::size_t p : lpn.postset(t)) arcs.push_back(out_arc(t, p));
            else
                for (std::size_t p : lpn.preset(t)) arcs.push_back(in_arc(p, t));

            if (!and_or_form(g, lpn.places()))
                report.warnings.push_back("expression of '" + tr.id +
                                          "' is not representable as a conjunction with a single "
                                          "any-of group; the translated net may not be equivalent");

            Transition out_tr;
            out_tr.id = tr.id;
            out_tr.kind = tr.kind;
            transitions.push_back(std::move(out_tr));
        }

        for (std::size_t i = first_arc; i < arcs.size(); ++i) {
            const Arc& a = arcs[i];
            ArcKey k;
            if (a.place_to_transition)
                k = {lpn.place_id(a.place), tr.id, a.sign};
            else
                k = {tr.id, lpn.place_id(a.place), a.sign};
            rec.arcs.push_back(std::move(k));
        }
        report.transitions.push_back(std::move(rec));
    }

    if (!report.rejections.empty()) return report;
    report.lspn.emplace(NetClass::LSPN, lpn.capacity(), lpn.places(), std::move(transitions),
                        std::move(arcs));
    return report;
}

DualMarking assign_initial_tokens(const Net& lpn, const Marking& m0, const Net& lspn) {
    if (lpn.places() != lspn.places())
        throw std::invalid_argument("nets do not share a place set");
    if (m0.size() != lpn.place_count())
        throw std::invalid_argument("marking width does not match the net");
    DualMarking out;
    out.pos.assign(lspn.place_count(), 0);
    out.neg.assign(lspn.place_count(), 0);
    for (std::size_t p = 0; p < lspn.place_count(); ++p) {
        if (lspn.place_has_double_arc(p)) {
            (m0[p] == 1 ? out.pos : out.neg)[p] = 1;
        } else {
            out.pos[p] = m0[p];
        }
    }
    return out;
}

TranslationReport translate_lpn(const Net& lpn, const Marking& m0) {
    TranslationReport report = translate_structure(lpn);
    if (!report.ok()) return report;
    if (auto problem = marking_problem(lpn, embed_plain(m0))) {
        report.rejections.push_back("initial marking: " + *problem);
        report.lspn.reset();
        return report;
    }
    report.initial = assign_initial_tokens(lpn, m0, *report.lspn);
    return report;
}

}  // namespace lspn
