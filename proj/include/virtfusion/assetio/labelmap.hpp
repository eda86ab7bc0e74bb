// SPDX-License-Identifier: Apache-2.0
//
// The active semantic label map: class ids, names, and per-class canonical
// heights. Shipped as a JSON config (configs/scannet20.json) so a dataset can
// be retargeted without a rebuild; the built-in default mirrors that file.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace virtfusion::assetio {

struct LabelClass {
  std::uint32_t id = 0;
  std::string name;
  double canonical_height_m = 1.0;

  bool operator==(const LabelClass&) const = default;
};

class LabelMap {
public:
  LabelMap() = default;
  explicit LabelMap(std::vector<LabelClass> classes);

  /// 20 indoor furniture/structure classes, ids 1..20, with hand-picked
  /// canonical heights. Identical to configs/scannet20.json.
  static LabelMap default_indoor20();

  /// Parses {"classes":[{"id":..,"name":..,"canonical_height_m":..}]}.
  static LabelMap from_json(std::string_view bytes);
  std::string to_json() const;

  const std::vector<LabelClass>& classes() const { return classes_; }
  bool contains(std::uint32_t id) const;
  const LabelClass& at(std::uint32_t id) const;
  std::optional<std::uint32_t> id_of(std::string_view name) const;

  bool operator==(const LabelMap&) const = default;

private:
  std::vector<LabelClass> classes_;
};

}  // namespace virtfusion::assetio
