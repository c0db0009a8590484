#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tailbound {

struct FigureRow {
  double sigma2;
  double bennett;
  double momopt;     // z_nm bound with moments (p, p^2 + sigma2)
  double xitheorem;  // xi_sum bound
};

struct FigurePanel {
  int n;
  double p;
  double t;
  std::vector<FigureRow> rows;
};

struct PanelSpec {
  double p;
  double t;
};

inline constexpr int kFigureN = 20;
inline constexpr int kFigureGrid = 50;

// p in {1/4, 1/2, 3/4}, four thresholds each.
std::vector<PanelSpec> figure1_panels();

// sigma2 = k/grid * p(1-p), k = 1..grid. Grid points run in parallel.
FigurePanel compute_panel(double p, double t, int n = kFigureN, int grid = kFigureGrid);
FigurePanel compute_panel_serial(double p, double t, int n = kFigureN, int grid = kFigureGrid);

// "fig1_p25_t6.csv"
std::string panel_filename(const FigurePanel& panel);
std::string panel_csv(const FigurePanel& panel);

// Computes every panel and writes one CSV each into dir (created if
// missing). Files are written to a temporary name and renamed into place.
// Throws std::filesystem::filesystem_error / std::runtime_error on I/O failure.
std::vector<std::filesystem::path> write_figure1(const std::filesystem::path& dir);

}  // namespace tailbound
