#pragma once

#include <memory>
#include <string>

#include "bicat/presentation.hpp"

inline std::string fixture_path(const std::string& name) { return std::string(BICAT_FIXTURE_DIR) + "/" + name; }

inline bicat::BicatPtr fixture(const std::string& name) { return bicat::load_presentation_file(fixture_path(name + ".bicat")); }
