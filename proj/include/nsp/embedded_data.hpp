#pragma once

#include <string_view>

// Contents of the files under data/, compiled in at build time.
namespace nsp::embedded {

std::string_view default_catalog_csv();
std::string_view table1_weights_csv();
std::string_view table1_reference_csv();

} // namespace nsp::embedded
