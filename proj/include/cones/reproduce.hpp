#pragma once

#include <string>
#include <vector>

namespace cones {

/// Writes the CSV/JSON bundle for "fig3", "fig4" or "fig5" under out_dir and
/// returns the written paths. Throws ParameterError on an unknown name.
std::vector<std::string> reproduce(const std::string& name, const std::string& out_dir);

const std::vector<std::string>& figure_names();

}  // namespace cones
