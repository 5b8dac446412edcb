#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <vector>

#include "etiquette/events/extraction.hpp"

namespace etiquette::events {

// Extracted-event store (versioned JSON). Episodes are persisted as columnar
// sample arrays with gap patches already applied, so a loaded bundle needs no
// patch bookkeeping.
inline constexpr int kEventStoreSchemaVersion = 1;

void save_events_json(std::ostream& out, const ExtractionBundle& bundle);
void save_events_json(const std::filesystem::path& path, const ExtractionBundle& bundle);

// A loaded bundle plus the synthetic trips backing its episode views.
struct EventStore {
  ExtractionBundle bundle;
  std::vector<std::unique_ptr<Trip>> backing;
};

EventStore load_events_json(std::istream& in);
EventStore load_events_json(const std::filesystem::path& path);

}  // namespace etiquette::events
