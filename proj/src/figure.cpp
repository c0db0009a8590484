#include "tailbound/figure.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "tailbound/bernstein.hpp"
#include "tailbound/classic.hpp"
#include "tailbound/instance_io.hpp"
#include "tailbound/mixture.hpp"

namespace tailbound {

namespace {

FigureRow panel_row(double p, double t, int n, int grid, int k) {
  const double sigma2 = k * p * (1.0 - p) / grid;
  const VarianceClassSpec vclass{p, sigma2};
  const std::vector<VarianceClassSpec> vs(static_cast<std::size_t>(n), vclass);
  const std::vector<MomentVector> mvs(static_cast<std::size_t>(n), MomentVector({p, p * p + sigma2}));
  return {sigma2, bennett_bound(n, vclass, t).value, z_nm_bound(mvs, t).value, xi_sum_bound(vs, t).value};
}

}  // namespace

std::vector<PanelSpec> figure1_panels() {
  std::vector<PanelSpec> out;
  const double ps[] = {0.25, 0.5, 0.75};
  const double ratios[3][4] = {{0.30, 0.35, 0.40, 0.45}, {0.55, 0.60, 0.65, 0.70}, {0.80, 0.85, 0.90, 0.95}};
  for (int i = 0; i < 3; ++i) {
    for (double r : ratios[i]) out.push_back({ps[i], std::round(r * kFigureN)});
  }
  return out;
}

FigurePanel compute_panel_serial(double p, double t, int n, int grid) {
  FigurePanel panel{n, p, t, {}};
  for (int k = 1; k <= grid; ++k) panel.rows.push_back(panel_row(p, t, n, grid, k));
  return panel;
}

FigurePanel compute_panel(double p, double t, int n, int grid) {
  FigurePanel panel{n, p, t, std::vector<FigureRow>(static_cast<std::size_t>(grid))};
#pragma omp parallel for schedule(dynamic)
  for (int k = 1; k <= grid; ++k) panel.rows[k - 1] = panel_row(p, t, n, grid, k);
  return panel;
}

std::string panel_filename(const FigurePanel& panel) {
  return "fig1_p" + std::to_string(static_cast<int>(std::lround(panel.p * 100))) + "_t" +
         format_number(panel.t) + ".csv";
}

std::string panel_csv(const FigurePanel& panel) {
  std::string out = "sigma2,bennett,momopt,xitheorem\n";
  for (const auto& r : panel.rows) {
    out += format_number(r.sigma2) + "," + format_number(r.bennett) + "," + format_number(r.momopt) + "," +
           format_number(r.xitheorem) + "\n";
  }
  return out;
}

std::vector<std::filesystem::path> write_figure1(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<fs::path> written;
  for (const auto& spec : figure1_panels()) {
    const auto panel = compute_panel(spec.p, spec.t);
    const fs::path target = dir / panel_filename(panel);
    fs::path tmp = target;
    tmp += ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw std::runtime_error("cannot write " + tmp.string());
      f << panel_csv(panel);
      if (!f.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
    written.push_back(target);
  }
  return written;
}

}  // namespace tailbound
