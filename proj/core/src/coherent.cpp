#include "stylecast/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "stylecast/errors.hpp"
#include "stylecast/parallel.hpp"
#include "stylecast/rng.hpp"

namespace stylecast {

namespace {

constexpr double kStdFloor = 1e-8;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// Offsets into a network's flat parameter vector.
struct Layout {
  std::size_t in = 0;
  std::size_t hidden = 0;
  std::size_t b1 = 0;  // w1 occupies [0, b1)
  std::size_t w2 = 0;
  std::size_t b2 = 0;
  std::size_t size = 0;
};

Layout layout_for(std::size_t in, std::size_t hidden) {
  Layout l;
  l.in = in;
  l.hidden = hidden;
  l.b1 = hidden * in;
  l.w2 = l.b1 + hidden;
  l.b2 = l.w2 + hidden;
  l.size = l.b2 + 1;
  return l;
}

/// Hidden activations go to `h` (length hidden); returns the standardized
/// output.
double forward_one(std::span<const double> p, const Layout& l, const double* x,
                   double* h) {
  for (std::size_t k = 0; k < l.hidden; ++k) {
    double z = p[l.b1 + k];
    const double* row = p.data() + k * l.in;
    for (std::size_t j = 0; j < l.in; ++j) z += row[j] * x[j];
    h[k] = sigmoid(z);
  }
  double y = p[l.b2];
  for (std::size_t k = 0; k < l.hidden; ++k) y += p[l.w2 + k] * h[k];
  return y;
}

template <class ValueFn>
void fill_features(const CoherentBank& bank, const TrajectoryNet& net,
                   std::size_t t, ValueFn&& value, double* out) {
  const int d = bank.config.own_lags;
  const double tmu = bank.mean[net.target];
  const double tsd = bank.stddev[net.target];
  for (int j = 0; j < d; ++j)
    out[j] = (value(net.target, t - 1 - static_cast<std::size_t>(j)) - tmu) / tsd;
  std::size_t p = static_cast<std::size_t>(d);
  for (const NetInput& inp : net.inputs)
    out[p++] = (value(inp.src, t - static_cast<std::size_t>(inp.lag)) -
                bank.mean[inp.src]) /
               bank.stddev[inp.src];
}

/// Cached design rows plus forward/backward scratch for one style group.
/// Both the trainer and the public loss/gradient accessors run through this
/// type, so they share one implementation of the objective.
struct GroupData {
  struct Member {
    std::size_t net = 0;  // index into bank.nets
    Layout layout;
    double mu = 0.0, sigma = 1.0;
    std::vector<double> x;     // rows x in, standardized features
    std::vector<double> y;     // rows, raw targets
    std::vector<double> xval;  // vrows x in
    std::vector<double> yval;  // vrows, raw
    std::vector<double> h;     // rows x hidden, cache of the last forward
    std::vector<double> pred;  // rows, raw-space predictions
  };

  std::size_t rows = 0;
  std::size_t vrows = 0;
  double lambda = 0.0;
  double l2 = 0.0;
  std::vector<Member> members;
  std::vector<double> gap;  // per-step observed mean minus predicted mean

  double loss_at(const CoherentBank& bank) {
    double fore = 0.0, wpen = 0.0;
    for (Member& m : members) {
      const std::span<const double> p(bank.nets[m.net].params);
      double sse = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        const double ystd =
            forward_one(p, m.layout, m.x.data() + r * m.layout.in,
                        m.h.data() + r * m.layout.hidden);
        m.pred[r] = m.mu + m.sigma * ystd;
        const double e = m.pred[r] - m.y[r];
        sse += e * e;
      }
      double wnorm = 0.0;
      for (std::size_t i = 0; i < m.layout.b1; ++i) wnorm += p[i] * p[i];
      for (std::size_t k = 0; k < m.layout.hidden; ++k)
        wnorm += p[m.layout.w2 + k] * p[m.layout.w2 + k];
      fore += sse;
      wpen += l2 * wnorm;
    }
    // Squared gap of the per-step means, added once per step. At lambda 0 a
    // member's gradient touches only its own rows, which keeps group
    // training bit-identical to training that net alone.
    const double inv = 1.0 / static_cast<double>(members.size());
    double coh = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      double ysum = 0.0, psum = 0.0;
      for (const Member& m : members) {
        ysum += m.y[r];
        psum += m.pred[r];
      }
      gap[r] = (ysum - psum) * inv;
      coh += gap[r] * gap[r];
    }
    const double inv_rows = 1.0 / static_cast<double>(rows);
    return (fore + lambda * coh) * inv_rows + wpen;
  }

  /// Gradient for one member at the parameters of the last loss_at call.
  void gradient(const CoherentBank& bank, std::size_t mi,
                std::vector<double>* out) const {
    const Member& m = members[mi];
    const std::span<const double> p(bank.nets[m.net].params);
    const Layout& l = m.layout;
    out->assign(l.size, 0.0);
    const double scale = 1.0 / static_cast<double>(rows);
    const double gap_w = lambda / static_cast<double>(members.size());
    for (std::size_t r = 0; r < rows; ++r) {
      // d(loss)/d(raw prediction), including this member's share of the gap
      const double g =
          scale * (2.0 * (m.pred[r] - m.y[r]) - 2.0 * gap_w * gap[r]);
      const double gs = g * m.sigma;
      const double* h = m.h.data() + r * l.hidden;
      const double* x = m.x.data() + r * l.in;
      (*out)[l.b2] += gs;
      for (std::size_t k = 0; k < l.hidden; ++k) {
        (*out)[l.w2 + k] += gs * h[k];
        const double dz = gs * p[l.w2 + k] * h[k] * (1.0 - h[k]);
        (*out)[l.b1 + k] += dz;
        double* wrow = out->data() + k * l.in;
        for (std::size_t j = 0; j < l.in; ++j) wrow[j] += dz * x[j];
      }
    }
    for (std::size_t i = 0; i < l.b1; ++i) (*out)[i] += 2.0 * l2 * p[i];
    for (std::size_t k = 0; k < l.hidden; ++k)
      (*out)[l.w2 + k] += 2.0 * l2 * p[l.w2 + k];
  }

  double val_mae(const CoherentBank& bank, std::size_t mi,
                 std::vector<double>* scratch) const {
    if (vrows == 0) return 0.0;
    const Member& m = members[mi];
    const std::span<const double> p(bank.nets[m.net].params);
    scratch->resize(m.layout.hidden);
    double err = 0.0;
    for (std::size_t r = 0; r < vrows; ++r) {
      const double ystd = forward_one(p, m.layout,
                                      m.xval.data() + r * m.layout.in,
                                      scratch->data());
      err += std::abs(m.mu + m.sigma * ystd - m.yval[r]);
    }
    return err / static_cast<double>(vrows);
  }
};

GroupData build_group_data(const CoherentBank& bank, const TrajectorySet& ts,
                           std::size_t group) {
  const Split& sp = *ts.split();
  const std::size_t floor = static_cast<std::size_t>(bank.group_floor[group]);
  GroupData data;
  data.rows = sp.train_end - floor;
  data.vrows = sp.val_end - sp.train_end;
  data.lambda = bank.config.lambda;
  data.l2 = bank.config.l2;
  data.gap.assign(data.rows, 0.0);

  const auto observed = [&ts](std::size_t idx, std::size_t t) {
    return ts.item(idx).values[t];
  };
  for (std::size_t net_idx : bank.groups[group]) {
    const TrajectoryNet& net = bank.nets[net_idx];
    GroupData::Member m;
    m.net = net_idx;
    m.layout = layout_for(net.input_dim(bank.config.own_lags),
                          static_cast<std::size_t>(bank.config.hidden));
    m.mu = bank.mean[net.target];
    m.sigma = bank.stddev[net.target];
    m.x.resize(data.rows * m.layout.in);
    m.y.resize(data.rows);
    m.h.assign(data.rows * m.layout.hidden, 0.0);
    m.pred.assign(data.rows, 0.0);
    for (std::size_t r = 0; r < data.rows; ++r) {
      const std::size_t t = floor + r;
      fill_features(bank, net, t, observed, m.x.data() + r * m.layout.in);
      m.y[r] = ts.item(net.target).values[t];
    }
    m.xval.resize(data.vrows * m.layout.in);
    m.yval.resize(data.vrows);
    for (std::size_t r = 0; r < data.vrows; ++r) {
      const std::size_t t = sp.train_end + r;
      fill_features(bank, net, t, observed, m.xval.data() + r * m.layout.in);
      m.yval[r] = ts.item(net.target).values[t];
    }
    data.members.push_back(std::move(m));
  }
  return data;
}

void init_net(const TrajectorySet& ts, const TrainConfig& cfg,
              TrajectoryNet* net, int attempt) {
  const Trajectory& tr = ts.item(net->target);
  Rng rng(derive_seed(cfg.seed, tr.style + "\x1f" + tr.unit,
                      static_cast<std::uint64_t>(attempt)));
  const Layout l = layout_for(net->input_dim(cfg.own_lags),
                              static_cast<std::size_t>(cfg.hidden));
  net->params.assign(l.size, 0.0);
  const double a1 = 1.0 / std::sqrt(static_cast<double>(l.in));
  const double a2 = 1.0 / std::sqrt(static_cast<double>(l.hidden));
  if (!cfg.zero_hidden_init)
    for (std::size_t i = 0; i < l.b1; ++i)
      net->params[i] = rng.uniform(-a1, a1);
  for (std::size_t k = 0; k < l.hidden; ++k)
    net->params[l.w2 + k] = rng.uniform(-a2, a2);
}

struct AdamState {
  std::vector<double> m, v, best;
  int t = 0;
  double best_mae = std::numeric_limits<double>::infinity();
  int bad_epochs = 0;
  bool active = true;
  int epochs = 0;
};

void adam_step(std::vector<double>* p, AdamState* st,
               const std::vector<double>& g, double lr) {
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  ++st->t;
  const double c1 = 1.0 - std::pow(kBeta1, st->t);
  const double c2 = 1.0 - std::pow(kBeta2, st->t);
  for (std::size_t i = 0; i < p->size(); ++i) {
    st->m[i] = kBeta1 * st->m[i] + (1.0 - kBeta1) * g[i];
    st->v[i] = kBeta2 * st->v[i] + (1.0 - kBeta2) * g[i] * g[i];
    (*p)[i] -= lr * (st->m[i] / c1) / (std::sqrt(st->v[i] / c2) + kEps);
  }
}

void train_group(CoherentBank* bank, const TrajectorySet& ts,
                 std::size_t group) {
  GroupData data = build_group_data(*bank, ts, group);
  const std::vector<std::size_t>& members = bank->groups[group];
  const TrainConfig& cfg = bank->config;

  for (int attempt = 0;; ++attempt) {
    std::vector<AdamState> st(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      TrajectoryNet& net = bank->nets[members[i]];
      init_net(ts, cfg, &net, attempt);
      st[i].m.assign(net.params.size(), 0.0);
      st[i].v.assign(net.params.size(), 0.0);
      st[i].best = net.params;
    }
    bank->group_loss_trace[group].clear();

    bool diverged = false;
    std::vector<double> grad, scratch;
    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
      bool any_active = false;
      for (const AdamState& s : st) any_active |= s.active;
      if (!any_active) break;

      const double loss = data.loss_at(*bank);
      if (!std::isfinite(loss)) {
        diverged = true;
        break;
      }
      bank->group_loss_trace[group].push_back(loss);

      for (std::size_t i = 0; i < members.size(); ++i) {
        if (!st[i].active) continue;
        data.gradient(*bank, i, &grad);
        adam_step(&bank->nets[members[i]].params, &st[i], grad,
                  cfg.learn_rate);
      }
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (!st[i].active) continue;
        ++st[i].epochs;
        const double mae = data.val_mae(*bank, i, &scratch);
        if (std::isfinite(mae) && mae < st[i].best_mae) {
          st[i].best_mae = mae;
          st[i].best = bank->nets[members[i]].params;
          st[i].bad_epochs = 0;
        } else if (++st[i].bad_epochs >= cfg.patience) {
          st[i].active = false;
          bank->nets[members[i]].params = st[i].best;
        }
      }
    }

    if (!diverged) {
      for (std::size_t i = 0; i < members.size(); ++i) {
        TrajectoryNet& net = bank->nets[members[i]];
        if (st[i].active) net.params = st[i].best;
        net.best_val_mae = st[i].best_mae;
        net.epochs = st[i].epochs;
      }
      return;
    }
    if (attempt == 1)
      throw NumericError("coherent training diverged twice in style " +
                         ts.styles()[group]);
  }
}

void check_config(const TrainConfig& cfg) {
  if (cfg.own_lags < 1) throw std::invalid_argument("own_lags must be >= 1");
  if (cfg.hidden < 1) throw std::invalid_argument("hidden must be >= 1");
  if (!(cfg.learn_rate > 0.0))
    throw std::invalid_argument("learn_rate must be positive");
  if (cfg.l2 < 0.0 || cfg.lambda < 0.0)
    throw std::invalid_argument("penalty weights must be non-negative");
  if (cfg.patience < 1 || cfg.max_epochs < 1)
    throw std::invalid_argument("patience and max_epochs must be >= 1");
  if (!(cfg.alpha_step > 0.0) || cfg.alpha_step > 1.0)
    throw std::invalid_argument("alpha_step must be in (0, 1]");
}

void check_bank(const CoherentBank& bank, const TrajectorySet& ts) {
  if (!bank.trained) throw std::invalid_argument("bank is not trained");
  if (bank.nets.size() != ts.size() || bank.mean.size() != ts.size())
    throw std::invalid_argument("bank does not match the trajectory set");
}

}  // namespace

CoherentBank train_coherent(const TrajectorySet& ts,
                            const InfluenceTensor* influence,
                            const TrainConfig& config) {
  check_config(config);
  ts.validate();
  if (!ts.split().has_value())
    throw std::invalid_argument("train_coherent needs a split-stamped set");

  if (influence != nullptr) {
    const bool unit_axis = influence->axis() == InfluenceAxis::kUnit;
    const auto& ent = unit_axis ? ts.units() : ts.styles();
    const auto& ctx = unit_axis ? ts.styles() : ts.units();
    if (influence->entities() != ent || influence->contexts() != ctx)
      throw std::invalid_argument(
          "influence tensor does not match the trajectory set");
  }

  CoherentBank bank;
  bank.config = config;

  const std::size_t n = ts.size();
  const Split& sp = *ts.split();
  bank.mean.resize(n);
  bank.stddev.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = ts.item(i).values;
    double mu = 0.0;
    for (std::size_t t = 0; t < sp.train_end; ++t) mu += v[t];
    mu /= static_cast<double>(sp.train_end);
    double var = 0.0;
    for (std::size_t t = 0; t < sp.train_end; ++t)
      var += (v[t] - mu) * (v[t] - mu);
    var /= static_cast<double>(sp.train_end);
    bank.mean[i] = mu;
    bank.stddev[i] = std::max(std::sqrt(var), kStdFloor);
  }

  const std::size_t n_styles = ts.style_count();
  const std::size_t n_units = ts.unit_count();
  bank.nets.resize(n);
  bank.groups.assign(n_styles, {});
  bank.group_floor.assign(n_styles, config.own_lags);
  for (std::size_t s = 0; s < n_styles; ++s) {
    for (std::size_t u = 0; u < n_units; ++u) {
      const std::size_t flat = s * n_units + u;
      TrajectoryNet& net = bank.nets[flat];
      net.target = flat;
      if (influence != nullptr) {
        if (influence->axis() == InfluenceAxis::kUnit) {
          for (std::size_t src = 0; src < n_units; ++src) {
            if (src == u) continue;
            const int lag = influence->lag(src, u, s);
            if (lag > 0) net.inputs.push_back({s * n_units + src, lag});
          }
        } else {
          for (std::size_t src = 0; src < n_styles; ++src) {
            if (src == s) continue;
            const int lag = influence->lag(src, s, u);
            if (lag > 0) net.inputs.push_back({src * n_units + u, lag});
          }
        }
      }
      int floor = config.own_lags;
      for (const NetInput& inp : net.inputs) floor = std::max(floor, inp.lag);
      bank.group_floor[s] = std::max(bank.group_floor[s], floor);
      bank.groups[s].push_back(flat);
    }
    if (sp.train_end <= static_cast<std::size_t>(bank.group_floor[s]))
      throw std::invalid_argument(
          "train region too short for the configured lags");
  }
  bank.group_loss_trace.assign(n_styles, {});

  parallel_for(n_styles, config.jobs,
               [&](std::size_t g) { train_group(&bank, ts, g); });
  bank.trained = true;
  return bank;
}

std::vector<std::vector<double>> forecast_coherent(const CoherentBank& bank,
                                                   const TrajectorySet& ts,
                                                   std::size_t horizon) {
  check_bank(bank, ts);
  const std::size_t start =
      ts.split().has_value() ? ts.split()->val_end : ts.length();
  for (int floor : bank.group_floor)
    if (start < static_cast<std::size_t>(floor))
      throw std::invalid_argument("history too short to forecast from");

  std::vector<std::vector<double>> ext(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    ext[i].assign(ts.item(i).values.begin(),
                  ts.item(i).values.begin() + start);

  const auto value = [&ext](std::size_t idx, std::size_t t) {
    return ext[idx][t];
  };
  std::vector<double> x, h(static_cast<std::size_t>(bank.config.hidden));
  std::vector<double> step(ts.size());
  std::vector<std::vector<double>> out(ts.size());
  for (std::size_t s = 0; s < horizon; ++s) {
    const std::size_t t = start + s;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const TrajectoryNet& net = bank.nets[i];
      const Layout l = layout_for(net.input_dim(bank.config.own_lags),
                                  static_cast<std::size_t>(bank.config.hidden));
      x.resize(l.in);
      fill_features(bank, net, t, value, x.data());
      const double ystd = forward_one(net.params, l, x.data(), h.data());
      step[i] = bank.mean[i] + bank.stddev[i] * ystd;
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
      ext[i].push_back(step[i]);
      out[i].push_back(step[i]);
    }
  }
  return out;
}

std::vector<std::vector<double>> validation_one_step(const CoherentBank& bank,
                                                     const TrajectorySet& ts) {
  check_bank(bank, ts);
  if (!ts.split().has_value())
    throw std::invalid_argument("validation_one_step needs a split");
  const Split& sp = *ts.split();

  const auto value = [&ts](std::size_t idx, std::size_t t) {
    return ts.item(idx).values[t];
  };
  std::vector<double> x, h(static_cast<std::size_t>(bank.config.hidden));
  std::vector<std::vector<double>> out(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const TrajectoryNet& net = bank.nets[i];
    const Layout l = layout_for(net.input_dim(bank.config.own_lags),
                                static_cast<std::size_t>(bank.config.hidden));
    x.resize(l.in);
    for (std::size_t t = sp.train_end; t < sp.val_end; ++t) {
      fill_features(bank, net, t, value, x.data());
      const double ystd = forward_one(net.params, l, x.data(), h.data());
      out[i].push_back(bank.mean[i] + bank.stddev[i] * ystd);
    }
  }
  return out;
}

CombinedForecaster select_alpha(CoherentBank style_bank,
                                CoherentBank unit_bank,
                                const TrajectorySet& ts) {
  const auto vs = validation_one_step(style_bank, ts);
  const auto vu = validation_one_step(unit_bank, ts);
  const Split& sp = *ts.split();
  const std::size_t vrows = sp.val_size();

  const double step = style_bank.config.alpha_step;
  const int grid = static_cast<int>(std::round(1.0 / step));
  double best_err = std::numeric_limits<double>::infinity();
  double best_alpha = 0.0;
  for (int g = 0; g <= grid; ++g) {
    const double alpha = g == grid ? 1.0 : std::min(1.0, g * step);
    double err = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t r = 0; r < vrows; ++r)
        err += std::abs(alpha * vs[i][r] + (1.0 - alpha) * vu[i][r] -
                        ts.item(i).values[sp.train_end + r]);
    if (vrows > 0) err /= static_cast<double>(vrows * ts.size());
    if (err < best_err) {
      best_err = err;
      best_alpha = alpha;
    }
  }

  CombinedForecaster model;
  model.style_bank = std::move(style_bank);
  model.unit_bank = std::move(unit_bank);
  model.alpha = best_alpha;
  return model;
}

std::vector<std::vector<double>> forecast_combined(
    const CombinedForecaster& model, const TrajectorySet& ts,
    std::size_t horizon) {
  auto fs = forecast_coherent(model.style_bank, ts, horizon);
  const auto fu = forecast_coherent(model.unit_bank, ts, horizon);
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t r = 0; r < fs[i].size(); ++r)
      fs[i][r] = model.alpha * fs[i][r] + (1.0 - model.alpha) * fu[i][r];
  return fs;
}

std::vector<double> group_parameters(const CoherentBank& bank,
                                     std::size_t group) {
  if (group >= bank.groups.size())
    throw std::invalid_argument("no such style group");
  std::vector<double> out;
  for (std::size_t net_idx : bank.groups[group]) {
    const auto& p = bank.nets[net_idx].params;
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

void set_group_parameters(CoherentBank& bank, std::size_t group,
                          std::span<const double> params) {
  if (group >= bank.groups.size())
    throw std::invalid_argument("no such style group");
  std::size_t pos = 0;
  for (std::size_t net_idx : bank.groups[group]) {
    auto& p = bank.nets[net_idx].params;
    if (pos + p.size() > params.size())
      throw std::invalid_argument("parameter block size mismatch");
    std::copy(params.begin() + pos, params.begin() + pos + p.size(),
              p.begin());
    pos += p.size();
  }
  if (pos != params.size())
    throw std::invalid_argument("parameter block size mismatch");
}

double group_training_loss(const CoherentBank& bank, const TrajectorySet& ts,
                           std::size_t group) {
  if (group >= bank.groups.size())
    throw std::invalid_argument("no such style group");
  GroupData data = build_group_data(bank, ts, group);
  return data.loss_at(bank);
}

std::vector<double> group_training_gradient(const CoherentBank& bank,
                                            const TrajectorySet& ts,
                                            std::size_t group) {
  if (group >= bank.groups.size())
    throw std::invalid_argument("no such style group");
  GroupData data = build_group_data(bank, ts, group);
  data.loss_at(bank);
  std::vector<double> out, grad;
  for (std::size_t i = 0; i < data.members.size(); ++i) {
    data.gradient(bank, i, &grad);
    out.insert(out.end(), grad.begin(), grad.end());
  }
  return out;
}

ModelSpec coherent_model_spec(std::string name, CoherentBank bank) {
  ModelSpec spec;
  spec.name = std::move(name);
  auto shared = std::make_shared<CoherentBank>(std::move(bank));
  spec.run = [shared](const TrajectorySet& ts, std::size_t horizon) {
    return forecast_coherent(*shared, ts, horizon);
  };
  return spec;
}

ModelSpec combined_model_spec(std::string name, CombinedForecaster model) {
  ModelSpec spec;
  spec.name = std::move(name);
  auto shared = std::make_shared<CombinedForecaster>(std::move(model));
  spec.run = [shared](const TrajectorySet& ts, std::size_t horizon) {
    return forecast_combined(*shared, ts, horizon);
  };
  return spec;
}

}  // namespace stylecast
