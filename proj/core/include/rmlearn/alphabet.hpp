#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rmlearn {

struct Proposition {
  int id = 0;
  std::string name;
};

// Ordered set of propositions with dense ids. Names are unique and non-empty.
class PropositionAlphabet {
 public:
  PropositionAlphabet() = default;
  explicit PropositionAlphabet(const std::vector<std::string>& names);

  int add(const std::string& name);
  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int id) const;
  std::optional<int> id(const std::string& name) const;
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const PropositionAlphabet& other) const {
    return names_ == other.names_;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

// One high-level observation: the subset of propositions seen on a step.
// Fixed width bit set over the alphabet; alphabets wider than 64 propositions
// spill into additional words. Totally ordered so serialization and tie
// breaking are canonical.
class HighLevelObs {
 public:
  HighLevelObs() = default;
  explicit HighLevelObs(int width);
  static HighLevelObs from_names(const PropositionAlphabet& alphabet,
                                 const std::vector<std::string>& props);

  int width() const { return static_cast<int>(width_); }
  bool test(int bit) const;
  void set(int bit, bool value = true);
  int count() const;
  bool none() const { return count() == 0; }

  // proposition names in this observation, sorted lexicographically
  std::vector<std::string> names(const PropositionAlphabet& alphabet) const;
  // "{}" or "{BP,R3}" with sorted names
  std::string to_string(const PropositionAlphabet& alphabet) const;

  bool operator==(const HighLevelObs& other) const = default;
  std::strong_ordering operator<=>(const HighLevelObs& other) const;
  std::size_t hash() const;

 private:
  std::uint32_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct HighLevelObsHash {
  std::size_t operator()(const HighLevelObs& o) const { return o.hash(); }
};

// Interning pool for the distinct observations of a corpus. Ids are dense and
// follow the canonical order of the observations, independent of trace order.
class ObsTable {
 public:
  ObsTable() = default;
  // input may contain duplicates and be unsorted
  static ObsTable build(std::vector<HighLevelObs> observations);

  int size() const { return static_cast<int>(obs_.size()); }
  const HighLevelObs& obs(int id) const { return obs_.at(id); }
  std::optional<int> id(const HighLevelObs& o) const;
  const std::vector<HighLevelObs>& all() const { return obs_; }

 private:
  std::vector<HighLevelObs> obs_;
  std::map<HighLevelObs, int> index_;
};

}  // namespace rmlearn
