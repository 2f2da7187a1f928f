#pragma once

#include <optional>
#include <string>

#include "sparseclust/simgen.hpp"

namespace sparseclust {

// Reads a rectangular numeric CSV (rows = samples, columns = features).
// `has_header` skips the first line.  An optional sidecar file of one integer
// label per line supplies ground-truth cluster assignments; labels may use
// any integer coding and are normalized to 0..k-1 by sorted value.  Parse
// failures name the offending 1-based row and column.
LabeledDataset load_csv(const std::string& path, bool has_header,
                        const std::optional<std::string>& truth_path = {});

// Writes the matrix as plain CSV (no header) with shortest round-trip
// decimal formatting, so identical matrices produce identical bytes.
void save_matrix_csv(const std::string& path, const DataMatrix& x);

// Writes one integer label per line.
void save_labels_csv(const std::string& path, const Partition& truth);

}  // namespace sparseclust
