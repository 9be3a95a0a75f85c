#pragma once

namespace stratlab {

/// Worker threads used for column- and mode-parallel loops. 0 restores the
/// OpenMP default. Results never depend on this value.
void set_threads(int n);
int threads();

}  // namespace stratlab
