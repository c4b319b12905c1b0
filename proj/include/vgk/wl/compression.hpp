#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "vgk/error.hpp"
#include "vgk/labels.hpp"

namespace vgk {

// Injective compression function z: label sequences (rendered as delimited
// strings) -> fresh integer labels. A fresh table starts with the node-label
// vocabulary registered in enum order, so initial labels are the same across
// tables. Shared across one Gram computation and persisted with it so later
// kernel evaluations compress equal patterns to equal integers.
class CompressionTable {
public:
  CompressionTable() {
    for (int i = 0; i < kLabelCount; ++i) intern(std::string(kLabelNames[i]));
  }

  int id_of(const std::string& key) {
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    return intern(key);
  }

  int size() const { return static_cast<int>(keys_.size()); }

  const std::string& key(int id) const { return keys_.at(id); }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["vocab_version"] = kLabelVocabularyVersion;
    j["keys"] = keys_;
    return j;
  }

  static CompressionTable from_json(const nlohmann::json& j) {
    if (j.at("vocab_version").get<int>() != kLabelVocabularyVersion)
      throw Error("compression table was built against a different label vocabulary");
    CompressionTable t;
    const auto& keys = j.at("keys");
    if (keys.size() < static_cast<size_t>(kLabelCount))
      throw Error("compression table is missing the base vocabulary");
    for (size_t i = 0; i < keys.size(); ++i) {
      const std::string k = keys[i].get<std::string>();
      if (i < static_cast<size_t>(kLabelCount)) {
        if (k != kLabelNames[i])
          throw Error("compression table vocabulary prefix mismatch at id " +
                      std::to_string(i));
        continue;
      }
      if (t.ids_.count(k)) throw Error("duplicate compression key '" + k + "'");
      t.intern(k);
    }
    return t;
  }

private:
  int intern(std::string key) {
    const int id = static_cast<int>(keys_.size());
    ids_.emplace(key, id);
    keys_.push_back(std::move(key));
    return id;
  }

  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> keys_;
};

} // namespace vgk
