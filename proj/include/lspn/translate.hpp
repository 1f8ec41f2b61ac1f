#pragma once

#include "lspn/net.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lspn {

struct TransitionTranslation {
    std::string id;
    TransitionKind kind = TransitionKind::Traditional;
    std::string dnf;                           // canonical DNF of the guard, "" for traditional
    std::vector<std::string> profile_places;   // connected places of the guarded side
    std::vector<Polarity> profile;             // parallel to profile_places
    std::vector<ArcKey> arcs;                  // arcs emitted for this transition
};

struct TranslationReport {
    std::optional<Net> lspn;
    std::optional<DualMarking> initial;
    std::vector<TransitionTranslation> transitions;
    std::vector<std::string> warnings;
    std::vector<std::string> rejections;
    bool ok() const { return rejections.empty(); }
};

// Structural translation of an LPN: places are kept as-is, traditional arcs
// become positive arcs, and each logic transition's guard profile decides the
// arc shape per connected place (positive occurrences only: single positive
// arc; both polarities: positive+negative pair). A place occurring only
// negated is a rejection; a guard outside plain and-or shape is a warning.
TranslationReport translate_structure(const Net& lpn);

// Token assignment for the translated net: dual-arc places hold exactly one
// token whose sign says whether the place was marked; every other place
// copies its count into the positive component.
DualMarking assign_initial_tokens(const Net& lpn, const Marking& m0, const Net& lspn);

TranslationReport translate_lpn(const Net& lpn, const Marking& m0);

}  // namespace lspn
