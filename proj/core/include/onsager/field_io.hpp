#pragma once

#include <filesystem>

#include "onsager/field.hpp"

namespace onsager {

// Binary layout (little-endian host order): 8-byte magic "ONSFLD01", then
// int32 dim, n, nt, components, then float64 length, dt, t0, then the
// row-major samples as float64.
void write_field_binary(const Field& field, const std::filesystem::path& path);
Field read_field_binary(const std::filesystem::path& path);

// CSV layout: a header row "dim,n,nt,components,length,dt,t0", one row of
// those values, then one row per sample location holding its components.
void write_field_csv(const Field& field, const std::filesystem::path& path);
Field read_field_csv(const std::filesystem::path& path);

}  // namespace onsager
