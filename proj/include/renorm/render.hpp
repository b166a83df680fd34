#pragma once

// Raster pictures of the dynamical plane.
//
// Scene JSON:
//   {
//     "width": 600, "height": 600,
//     "center": [0.0, 0.0], "radius": 2.0,      // radius = half of the view height
//     "c": [-1.0, 0.0],                         // optional, overridden by the caller
//     "layers": [
//       {"type": "julia", "max_iter": 500},
//       {"type": "equipotential", "levels": [10.0, 0.5]},
//       {"type": "rays", "angles": ["1/3", "2/3"], "level_min": 1e-6},
//       {"type": "points", "points": [[-0.618, 0.0]]}
//     ]
//   }
// Layers are drawn in order.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "renorm/plane.hpp"

namespace renorm {

struct Layer {
  std::string type;  // julia, equipotential, rays, points
  int max_iter = 500;
  std::vector<double> levels;
  std::vector<Angle> angles;
  double level_min = 1e-6;
  std::vector<Complex> points;
};

struct Scene {
  int width = 400;
  int height = 400;
  Complex center{0.0, 0.0};
  double radius = 2.0;
  std::optional<Complex> c;
  std::vector<Layer> layers;
};

Scene parse_scene(const std::string& json_text);

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel
};

// Rows and rays are spread over RENORM_RAYS_THREADS worker threads (default:
// hardware concurrency); output does not depend on the thread count.
Image render(const Params& params, const Scene& scene);
void write_ppm(const Image& image, std::ostream& out);

}  // namespace renorm
