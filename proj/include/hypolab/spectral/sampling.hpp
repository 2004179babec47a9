#pragma once

#include "hypolab/spectral/vector.hpp"

namespace hypolab::spectral {

// Physical-space synthesis of a spectral vector on a tensor grid.
struct Grid2D {
    Vec x1;                    // nx1 nodes on [-1,1]
    Vec x2;                    // nx2 nodes on [0,1]
    std::vector<Vec> values;   // values[i][j] = u(x1[i], x2[j])

    // Trapezoid L2 norm over the whole rectangle.
    double l2_norm() const;
};

Grid2D sample_on_grid(const SpectralVector& u, int nx1, int nx2);

// CSV heatmap rows (x1, x2, value), '%.17g'.
std::string heatmap_csv(const Grid2D& g);

}  // namespace hypolab::spectral
