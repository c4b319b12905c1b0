#pragma once

#include "json.hpp"

#include "vgk/svm/smo.hpp"

namespace vgk {

inline nlohmann::json model_to_json(const PairwiseModel& m) {
  return {{"support_indices", m.support_indices},
          {"alpha", m.alpha},
          {"support_labels", m.support_labels},
          {"bias", m.bias},
          {"platt", {{"a", m.platt_a}, {"b", m.platt_b}, {"converged", m.platt_converged}}},
          {"C", m.C},
          {"degenerate", m.degenerate},
          {"degenerate_label", m.degenerate_label},
          {"jittered", m.jittered},
          {"kernel_fingerprint", m.kernel_fingerprint}};
}

inline PairwiseModel model_from_json(const nlohmann::json& j) {
  PairwiseModel m;
  m.support_indices = j.at("support_indices").get<std::vector<int>>();
  m.alpha = j.at("alpha").get<std::vector<double>>();
  m.support_labels = j.at("support_labels").get<std::vector<int>>();
  m.bias = j.at("bias").get<double>();
  m.platt_a = j.at("platt").at("a").get<double>();
  m.platt_b = j.at("platt").at("b").get<double>();
  m.platt_converged = j.at("platt").at("converged").get<bool>();
  m.C = j.at("C").get<double>();
  m.degenerate = j.at("degenerate").get<bool>();
  m.degenerate_label = j.at("degenerate_label").get<int>();
  m.jittered = j.at("jittered").get<bool>();
  m.kernel_fingerprint = j.at("kernel_fingerprint").get<std::string>();
  if (m.alpha.size() != m.support_indices.size() ||
      m.support_labels.size() != m.support_indices.size())
    throw Error("model file: support arrays differ in length");
  return m;
}

} // namespace vgk
