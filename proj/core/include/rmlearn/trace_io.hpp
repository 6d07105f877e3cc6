#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "rmlearn/trace.hpp"

namespace rmlearn {

// JSON-lines trace files: a header record (format tag, alphabet, compressed
// flag, free-form meta), then one record per trace with observations as
// sorted proposition-name arrays and the reward sequence.
void write_trace_set(std::ostream& os, const TraceSet& set,
                     const std::map<std::string, std::string>& meta);
TraceSet read_trace_set(std::istream& is,
                        std::map<std::string, std::string>* meta_out = nullptr);

void save_trace_set(const std::string& path, const TraceSet& set,
                    const std::map<std::string, std::string>& meta);
TraceSet load_trace_set(const std::string& path,
                        std::map<std::string, std::string>* meta_out = nullptr);

}  // namespace rmlearn
