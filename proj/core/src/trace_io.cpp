#include "rmlearn/trace_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "rmlearn/errors.hpp"

namespace rmlearn {

namespace {
using ordered_json = nlohmann::ordered_json;
constexpr const char* kFormatTag = "trace-set-v1";
}  // namespace

void write_trace_set(std::ostream& os, const TraceSet& set,
                     const std::map<std::string, std::string>& meta) {
  bool compressed = false;
  for (std::size_t i = 0; i < set.traces.size(); ++i) {
    if (i == 0) {
      compressed = set.traces[i].compressed;
    } else if (set.traces[i].compressed != compressed) {
      throw ConfigError("trace set mixes compressed and uncompressed traces");
    }
  }
  ordered_json header;
  header["format"] = kFormatTag;
  header["alphabet"] = set.alphabet.names();
  header["compressed"] = compressed;
  header["num_traces"] = set.traces.size();
  ordered_json jmeta = ordered_json::object();
  for (const auto& [k, v] : meta) jmeta[k] = v;
  header["meta"] = jmeta;
  os << header.dump() << "\n";

  for (const auto& tr : set.traces) {
    ordered_json rec;
    ordered_json obs = ordered_json::array();
    for (const auto& o : tr.obs) obs.push_back(o.names(set.alphabet));
    rec["obs"] = obs;
    rec["rewards"] = tr.rewards;
    os << rec.dump() << "\n";
  }
}

TraceSet read_trace_set(std::istream& is,
                        std::map<std::string, std::string>* meta_out) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("trace file is empty");
  ordered_json header;
  try {
    header = ordered_json::parse(line);
  } catch (const std::exception& e) {
    throw IoError(std::string("bad trace header: ") + e.what());
  }
  if (!header.is_object() || header.value("format", "") != kFormatTag) {
    throw IoError("not a trace-set file (missing format tag)");
  }
  TraceSet set;
  if (!header.contains("alphabet") || !header["alphabet"].is_array()) {
    throw IoError("trace header lacks an alphabet");
  }
  for (const auto& name : header["alphabet"]) {
    set.alphabet.add(name.get<std::string>());
  }
  const bool compressed = header.value("compressed", false);
  if (meta_out && header.contains("meta")) {
    for (const auto& [k, v] : header["meta"].items()) {
      (*meta_out)[k] = v.get<std::string>();
    }
  }

  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json rec;
    try {
      rec = ordered_json::parse(line);
    } catch (const std::exception& e) {
      throw IoError("bad trace record on line " + std::to_string(line_no) +
                    ": " + e.what());
    }
    LabelledTrace tr;
    tr.compressed = compressed;
    if (!rec.contains("obs") || !rec["obs"].is_array() || rec["obs"].empty()) {
      throw ConfigError("trace on line " + std::to_string(line_no) +
                        " has no observations");
    }
    for (const auto& names : rec["obs"]) {
      std::vector<std::string> v;
      for (const auto& n : names) v.push_back(n.get<std::string>());
      tr.obs.push_back(HighLevelObs::from_names(set.alphabet, v));
    }
    if (rec.contains("rewards")) {
      for (const auto& r : rec["rewards"]) tr.rewards.push_back(r.get<double>());
    }
    if (tr.rewards.size() + 1 != tr.obs.size()) {
      throw ConfigError("trace on line " + std::to_string(line_no) +
                        " has misaligned rewards");
    }
    set.traces.push_back(std::move(tr));
  }
  return set;
}

void save_trace_set(const std::string& path, const TraceSet& set,
                    const std::map<std::string, std::string>& meta) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  write_trace_set(os, set, meta);
  if (!os) throw IoError("write failed for '" + path + "'");
}

TraceSet load_trace_set(const std::string& path,
                        std::map<std::string, std::string>* meta_out) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  return read_trace_set(is, meta_out);
}

}  // namespace rmlearn
