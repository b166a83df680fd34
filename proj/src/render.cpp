#include "renorm/render.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include "json.hpp"
#include <ostream>
#include <stdexcept>
#include <thread>

namespace renorm {

namespace {

using nlohmann::json;

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex numbers are [re, im] arrays");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::size_t thread_count() {
  if (const char* env = std::getenv("RENORM_RAYS_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min(thread_count(), std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

struct Canvas {
  const Scene& scene;
  Image& image;
  double pixel;  // plane units per pixel

  Complex at(int x, int y) const {
    return scene.center + Complex((x + 0.5 - scene.width / 2.0) * pixel, (scene.height / 2.0 - y - 0.5) * pixel);
  }
  std::pair<double, double> to_pixel(Complex z) const {
    return {(z.real() - scene.center.real()) / pixel + scene.width / 2.0 - 0.5,
            (scene.center.imag() - z.imag()) / pixel + scene.height / 2.0 - 0.5};
  }
  void put(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    if (x < 0 || y < 0 || x >= image.width || y >= image.height) return;
    std::size_t i = 3 * (static_cast<std::size_t>(y) * image.width + x);
    image.rgb[i] = r;
    image.rgb[i + 1] = g;
    image.rgb[i + 2] = b;
  }
  void line(Complex a, Complex b, std::uint8_t r, std::uint8_t g, std::uint8_t bl) {
    auto [x0, y0] = to_pixel(a);
    auto [x1, y1] = to_pixel(b);
    if (!std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(y0) || !std::isfinite(y1)) return;
    const double far = 4.0 * (image.width + image.height);
    if (std::max({std::abs(x0), std::abs(x1), std::abs(y0), std::abs(y1)}) > far) return;
    const int steps = static_cast<int>(std::ceil(std::max(std::abs(x1 - x0), std::abs(y1 - y0)))) + 1;
    for (int s = 0; s <= steps; ++s) {
      double u = static_cast<double>(s) / steps;
      put(static_cast<int>(std::lround(x0 + u * (x1 - x0))), static_cast<int>(std::lround(y0 + u * (y1 - y0))), r, g, bl);
    }
  }
};

void draw_julia(const Params& params, const Layer& layer, Canvas& canvas) {
  parallel_for(static_cast<std::size_t>(canvas.image.height), [&](std::size_t row) {
    const int y = static_cast<int>(row);
    for (int x = 0; x < canvas.image.width; ++x) {
      Complex z = canvas.at(x, y);
      int n = 0;
      while (n < layer.max_iter && std::norm(z) <= 1e6) {
        z = z * z + params.c;
        ++n;
      }
      if (n == layer.max_iter) {
        canvas.put(x, y, 0, 0, 0);
      } else {
        double smooth = n + 1 - std::log2(std::log(std::abs(z)));
        double shade = 1.0 - std::exp(-0.08 * std::max(smooth, 0.0));
        auto v = static_cast<std::uint8_t>(255 - 200 * shade);
        canvas.put(x, y, v, v, 255);
      }
    }
  });
}

void draw_equipotentials(const Params& params, const Layer& layer, Canvas& canvas) {
  parallel_for(static_cast<std::size_t>(canvas.image.height), [&](std::size_t row) {
    const int y = static_cast<int>(row);
    for (int x = 0; x < canvas.image.width; ++x) {
      Complex z = canvas.at(x, y), d = 1.0;
      double scale = 1.0;
      int n = 0;
      while (n < params.max_iter && std::abs(z) <= 1e100) {
        d *= 2.0 * z;
        z = z * z + params.c;
        scale *= 0.5;
        ++n;
      }
      if (std::abs(z) <= 1e100) continue;
      const double g = scale * std::log(std::abs(z));
      const double grad = scale * std::abs(d) / std::abs(z);
      for (double level : layer.levels) {
        if (std::abs(g - level) <= 0.75 * grad * canvas.pixel) canvas.put(x, y, 0, 140, 0);
      }
    }
  });
}

void draw_rays(const Params& params, const Layer& layer, Canvas& canvas) {
  std::vector<RayPath> paths(layer.angles.size());
  parallel_for(layer.angles.size(), [&](std::size_t i) { paths[i] = trace_ray(params, layer.angles[i], layer.level_min); });
  for (const auto& path : paths) {
    for (std::size_t k = 1; k < path.points.size(); ++k) canvas.line(path.points[k - 1], path.points[k], 220, 0, 0);
    if (path.landing && !path.points.empty()) canvas.line(path.points.back(), path.landing->point, 220, 0, 0);
  }
}

void draw_points(const Layer& layer, Canvas& canvas) {
  for (Complex p : layer.points) {
    auto [px, py] = canvas.to_pixel(p);
    const int cx = static_cast<int>(std::lround(px)), cy = static_cast<int>(std::lround(py));
    for (int dy = -2; dy <= 2; ++dy) {
      for (int dx = -2; dx <= 2; ++dx) {
        if (dx * dx + dy * dy <= 5) canvas.put(cx + dx, cy + dy, 255, 160, 0);
      }
    }
  }
}

}  // namespace

Scene parse_scene(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scene is not valid JSON: ") + e.what());
  }
  try {
    Scene scene;
    scene.width = j.value("width", scene.width);
    scene.height = j.value("height", scene.height);
    if (j.contains("center")) scene.center = complex_from(j["center"]);
    scene.radius = j.value("radius", scene.radius);
    if (j.contains("c")) scene.c = complex_from(j["c"]);
    if (scene.width < 1 || scene.height < 1 || scene.width > 16384 || scene.height > 16384) {
      throw std::invalid_argument("scene size must lie in 1..16384");
    }
    if (!(scene.radius > 0)) throw std::invalid_argument("scene radius must be positive");
    for (const auto& l : j.value("layers", json::array())) {
      Layer layer;
      layer.type = l.at("type").get<std::string>();
      if (layer.type == "julia") {
        layer.max_iter = l.value("max_iter", layer.max_iter);
      } else if (layer.type == "equipotential") {
        layer.levels = l.value("levels", std::vector<double>{10.0});
      } else if (layer.type == "rays") {
        for (const auto& a : l.at("angles")) layer.angles.push_back(Angle::parse(a.get<std::string>()));
        layer.level_min = l.value("level_min", layer.level_min);
      } else if (layer.type == "points") {
        for (const auto& p : l.at("points")) layer.points.push_back(complex_from(p));
      } else {
        throw std::invalid_argument("unknown layer type '" + layer.type + "'");
      }
      scene.layers.push_back(std::move(layer));
    }
    return scene;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed scene: ") + e.what());
  }
}

Image render(const Params& params, const Scene& scene) {
  params.check();
  Image image;
  image.width = scene.width;
  image.height = scene.height;
  image.rgb.assign(static_cast<std::size_t>(scene.width) * scene.height * 3, 255);
  Canvas canvas{scene, image, 2.0 * scene.radius / scene.height};
  for (const auto& layer : scene.layers) {
    if (layer.type == "julia") {
      draw_julia(params, layer, canvas);
    } else if (layer.type == "equipotential") {
      draw_equipotentials(params, layer, canvas);
    } else if (layer.type == "rays") {
      draw_rays(params, layer, canvas);
    } else if (layer.type == "points") {
      draw_points(layer, canvas);
    }
  }
  return image;
}

void write_ppm(const Image& image, std::ostream& out) {
  out << "P6\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.rgb.data()), static_cast<std::streamsize>(image.rgb.size()));
}

}  // namespace renorm
