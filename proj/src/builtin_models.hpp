#pragma once

#include <optional>
#include <string>
#include <vector>

#include "model.hpp"

namespace logvor {

// Bundled example models. `full` always holds the linear model (the
// extension when the example is partial); `partial` is set only for
// partial examples.
struct ExampleModel {
  LinearModel full;
  std::optional<PartialLinearModel> partial;
};

std::vector<std::string> example_names();

// Throws ErrorKind::Domain for unknown names.
ExampleModel example_model(const std::string& name);

}  // namespace logvor
