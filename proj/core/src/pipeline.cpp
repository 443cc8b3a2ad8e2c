#include "roblev/pipeline.hpp"

namespace roblev {

Analysis analyze(const RunConfig& config, const Dataset& data) {
  Analysis a;
  a.spec = parse_formula(config.formula);

  const Dataset* source = &data;
  Dataset overridden;
  if (!config.categorical.empty()) {
    overridden = data;
    apply_label_overrides(overridden, config.categorical);
    source = &overridden;
  }
  a.design = build_design(a.spec, *source);
  a.classical = classical_diagnostics(a.design.x);

  Vector weights(a.design.n(), 1.0);
  if (a.design.p2 > 0) {
    a.fit = fast_mcd(a.design.x2(), config.mcd);
    weights = a.fit->weights;
    a.modified = build_modified_design(a.design, *a.fit);
  } else {
    a.modified = build_modified_design(a.design, weights, 1.0);
  }
  a.robust_hat = robust_hat(a.design, a.modified);
  a.robust_rd = robust_distance(a.design, a.modified);

  a.report = assemble_report(a.design, a.classical, weights, a.robust_hat, a.robust_rd,
                             config.flag_cutoff);
  auto& hd = a.report.header;
  hd.formula = render_formula(a.spec);
  hd.seed = config.mcd.seed;
  hd.alpha = config.mcd.alpha;
  hd.n_trials = config.mcd.n_trials;
  hd.reweight_prob = config.mcd.reweight_prob;
  hd.small_sample = config.mcd.use_small_sample_correction;
  if (a.fit) {
    hd.h = a.fit->h;
    hd.c = a.fit->c;
    hd.enumerated = a.fit->enumerated;
  }
  return a;
}

}  // namespace roblev
