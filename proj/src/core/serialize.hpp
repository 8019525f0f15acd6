// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "core/fns.hpp"
#include "core/quadrature.hpp"
#include "core/sphere.hpp"

namespace linrelu {

// JSON documents with doubles at 17 significant digits, so a save/load cycle
// reproduces every value bit for bit.
std::string pointset_to_json(const PointSet& ps);
PointSet pointset_from_json(const std::string& text);

// The rule references its point set by an FNV-1a hash of the coordinates.
std::string rule_to_json(const QuadratureRule& rule);
std::string points_hash(const PointSet& ps);

std::string model_to_json(const FiniteNeuronModel& model);
FiniteNeuronModel model_from_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace linrelu
