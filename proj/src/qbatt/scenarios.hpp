// scenarios.hpp — config-driven experiments and figure-data generators.

#pragma once

#include <string>

#include "qbatt/config.hpp"

namespace qbatt {

// Names accepted by the `scenario` key.
bool known_scenario(const std::string& name);

// Execute one scenario described by cfg. Writes the configured data file(s)
// plus a `<stem>.meta.json` sidecar; returns a one-line summary. Outputs are
// deterministic (no timestamps; thread count never changes results).
std::string run_scenario(const config& cfg);

}  // namespace qbatt
