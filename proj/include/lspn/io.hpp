#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "lspn/net.hpp"
#include "lspn/statespace.hpp"

#include <json.hpp>

namespace lspn {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A net plus the marking stored alongside it. Plain nets carry `marking`,
// signed nets carry `dual`; either may be absent in the file.
struct NetDocument {
    Net net;
    std::optional<Marking> marking;
    std::optional<DualMarking> dual;
};

nlohmann::json net_to_json(const NetDocument& doc);
NetDocument net_from_json(const nlohmann::json& j);

// Canonical text form: two-space indent, sorted keys, trailing newline.
// save -> load -> save is byte-identical.
std::string to_json_text(const NetDocument& doc);

NetDocument load_net(const std::filesystem::path& path);
void save_net(const std::filesystem::path& path, const NetDocument& doc);

std::string export_dot(const Net& net, const Lts& lts);
std::string export_dot(const Net& net, const ReachTree& tree, const Lts& lts);

}  // namespace lspn
