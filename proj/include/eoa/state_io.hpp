#pragma once

#include <string>

#include <json.hpp>

#include "eoa/qstate.hpp"

namespace eoa {

// State file layout: { "dims": [d0, d1, ...], "kind": "pure"|"mixed",
// "data": ... } with complex entries as [re, im]; pure data is a flat
// list, mixed data is a list of rows.
nlohmann::json state_to_json(const QState& state);
QState state_from_json(const nlohmann::json& j);

QState load_state(const std::string& path);
void save_state(const std::string& path, const QState& state);

}  // namespace eoa
