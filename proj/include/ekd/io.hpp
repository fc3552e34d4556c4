#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ekd/fitting.hpp"
#include "ekd/grid.hpp"
#include "ekd/optimizers.hpp"

namespace ekd {

/// Field CSV: header x1,..,xd,value[,mask]; one row per grid point in
/// candidate order. Values at masked-out rows may be empty or any number.
void write_field_csv(const std::filesystem::path& path, const GridSpace& grid,
                     const std::vector<double>& values,
                     const std::vector<std::uint8_t>* mask = nullptr);

FieldData read_field_csv(const std::filesystem::path& path);

/// Design document: grid hash plus indices and coordinates, portable across
/// runs that rebuild an identical grid.
void write_design_doc(const std::filesystem::path& path, const GridSpace& grid,
                      const Design& design);

/// Loads a design and verifies it against the given grid (hash and index
/// range); throws std::runtime_error on mismatch.
Design read_design_doc(const std::filesystem::path& path, const GridSpace& grid);

void write_trace(const std::filesystem::path& path, const CriterionTrace& trace);

void write_front(const std::filesystem::path& path, const ParetoFront& front);

void write_fit_doc(const std::filesystem::path& path, const FitResult& fit);
FitResult read_fit_doc(const std::filesystem::path& path);

}  // namespace ekd
