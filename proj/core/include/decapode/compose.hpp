// Copyright 2026 The Decapode Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "decapode/decapode.hpp"

namespace decapode {

struct UwdBox {
  std::string name;
  std::vector<std::string> ports;
};

struct UwdWire {
  std::size_t box = 0;
  std::size_t port = 0;
  std::size_t junction = 0;
};

/// Undirected wiring diagram. An empty junction name means unnamed.
struct UwdPattern {
  std::vector<UwdBox> boxes;
  std::vector<std::string> junctions;
  std::vector<UwdWire> wires;
  std::vector<std::size_t> outer_ports;

  std::size_t add_box(std::string name, std::vector<std::string> ports);
  std::size_t add_junction(std::string name);
  void wire(std::size_t box, std::size_t port, std::size_t junction);
  std::size_t degree(std::size_t junction) const;

  /// Throws invalid-pattern on dangling indices, a port wired zero or
  /// several times, or repeated junction names.
  void check() const;
};

/// A component: a Decapode whose exposed vars line up with its box's ports.
struct OpenDecapode {
  Decapode decapode;
  std::vector<std::string> exposed;

  /// Throws invalid-argument on unknown or repeated exposed names.
  void check() const;
};

/// Glues the components along the pattern's junctions. Each merged var takes
/// its junction's name (or the least exposed name when unnamed), other named
/// vars become "box.var", anonymous vars are renumbered, and a tangent whose
/// state was renamed follows it when the state has a single ∂ₜ. An unwired
/// junction contributes a fresh untyped var.
Decapode oapply(const UwdPattern& pattern, const std::vector<OpenDecapode>& components);

/// Like oapply, exposing the outer junctions' vars in outer_ports order.
OpenDecapode oapply_open(const UwdPattern& pattern, const std::vector<OpenDecapode>& components);

/// One box whose ports are the component's exposed names, each on its own
/// junction of the same name.
UwdPattern identity_pattern(const OpenDecapode& component, const std::string& box_name = "box");

std::string uwd_to_json(const UwdPattern& pattern, int indent = 2);
/// "box", "port" and "junction" of a wire and the outer_ports entries may be
/// indices or names. Throws malformed-input on bad JSON and invalid-pattern
/// on unresolvable names.
UwdPattern uwd_from_json(std::string_view text);

/// Reads a component from the equation language (using `expose`) or, when
/// the text starts with '{', from decapode JSON with an "exposed" array.
OpenDecapode load_component(std::string_view text);

}  // namespace decapode
