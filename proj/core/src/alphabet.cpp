#include "rmlearn/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

#include "rmlearn/errors.hpp"

namespace rmlearn {

PropositionAlphabet::PropositionAlphabet(const std::vector<std::string>& names) {
  for (const auto& n : names) add(n);
}

int PropositionAlphabet::add(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("proposition name must be non-empty");
  if (index_.count(name)) throw std::invalid_argument("duplicate proposition name: " + name);
  int id = static_cast<int>(names_.size());
  names_.push_back(name);
  index_[name] = id;
  return id;
}

const std::string& PropositionAlphabet::name(int id) const {
  if (id < 0 || id >= size()) throw std::out_of_range("proposition id out of range");
  return names_[static_cast<std::size_t>(id)];
}

std::optional<int> PropositionAlphabet::id(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

HighLevelObs::HighLevelObs(int width) {
  if (width < 0) throw std::invalid_argument("observation width must be non-negative");
  width_ = static_cast<std::uint32_t>(width);
  words_.assign((width + 63) / 64, 0);
}

HighLevelObs HighLevelObs::from_names(const PropositionAlphabet& alphabet,
                                      const std::vector<std::string>& props) {
  HighLevelObs o(alphabet.size());
  for (const auto& p : props) {
    auto id = alphabet.id(p);
    if (!id) throw ConfigError("unknown proposition: " + p);
    o.set(*id);
  }
  return o;
}

bool HighLevelObs::test(int bit) const {
  if (bit < 0 || bit >= width()) throw std::out_of_range("proposition bit out of range");
  return (words_[static_cast<std::size_t>(bit) / 64] >> (bit % 64)) & 1u;
}

void HighLevelObs::set(int bit, bool value) {
  if (bit < 0 || bit >= width()) throw std::out_of_range("proposition bit out of range");
  std::uint64_t mask = 1ULL << (bit % 64);
  if (value)
    words_[static_cast<std::size_t>(bit) / 64] |= mask;
  else
    words_[static_cast<std::size_t>(bit) / 64] &= ~mask;
}

int HighLevelObs::count() const {
  int c = 0;
  for (auto w : words_) c += __builtin_popcountll(w);
  return c;
}

std::vector<std::string> HighLevelObs::names(const PropositionAlphabet& alphabet) const {
  std::vector<std::string> out;
  for (int i = 0; i < width(); ++i)
    if (test(i)) out.push_back(alphabet.name(i));
  std::sort(out.begin(), out.end());
  return out;
}

std::string HighLevelObs::to_string(const PropositionAlphabet& alphabet) const {
  std::string s = "{";
  bool first = true;
  for (const auto& n : names(alphabet)) {
    if (!first) s += ",";
    s += n;
    first = false;
  }
  s += "}";
  return s;
}

std::strong_ordering HighLevelObs::operator<=>(const HighLevelObs& other) const {
  if (auto c = width_ <=> other.width_; c != 0) return c;
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (auto c = words_[i] <=> other.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t HighLevelObs::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ width_;
  for (auto w : words_) {
    h ^= w;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

ObsTable ObsTable::build(std::vector<HighLevelObs> observations) {
  std::sort(observations.begin(), observations.end());
  observations.erase(std::unique(observations.begin(), observations.end()),
                     observations.end());
  ObsTable t;
  t.obs_ = std::move(observations);
  for (int i = 0; i < t.size(); ++i) t.index_[t.obs_[static_cast<std::size_t>(i)]] = i;
  return t;
}

std::optional<int> ObsTable::id(const HighLevelObs& o) const {
  auto it = index_.find(o);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace rmlearn
