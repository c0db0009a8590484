#include "tailbound/evaluate.hpp"

#include <algorithm>
#include <stdexcept>

#include "tailbound/bernstein.hpp"
#include "tailbound/classic.hpp"
#include "tailbound/convex_opt.hpp"
#include "tailbound/errors.hpp"
#include "tailbound/mixture.hpp"

namespace tailbound {

namespace {

template <class T>
std::vector<T> classes_as(const Instance& inst) {
  std::vector<T> out;
  for (const auto& c : inst.classes) out.push_back(std::get<T>(c));
  return out;
}

std::vector<MomentVector> moment_vectors(const Instance& inst) {
  if (inst.level == InfoLevel::moments) return classes_as<MomentVector>(inst);
  std::vector<MomentVector> out;
  for (const auto& v : classes_as<VarianceClassSpec>(inst)) out.emplace_back(std::vector<double>{v.p, v.p * v.p + v.sigma2});
  return out;
}

BoundReport compute(Method m, const Instance& inst) {
  std::vector<double> means;
  for (const auto& c : inst.classes) means.push_back(class_mean(c));
  const MeanInstance mi = MeanInstance::from_means(means, inst.t);
  switch (m) {
    case Method::markov: {
      double total = 0.0;
      for (double x : means) total += x;
      return markov_bound(total, inst.t);
    }
    case Method::hoeffding:
      return hoeffding_bound(mi);
    case Method::hoeffding_exp:
      return hoeffding_exp_bound(mi);
    case Method::bentkus_linear:
      return bentkus_linear_bound(mi);
    case Method::missing_factor:
      return missing_factor_bound(mi);
    case Method::binomial_comparison:
      return binomial_comparison_bound(mi);
    case Method::bennett: {
      const auto vs = classes_as<VarianceClassSpec>(inst);
      for (const auto& v : vs) {
        if (!(v == vs.front())) throw PreconditionError("requires identical (p, sigma2) for every variable");
      }
      return bennett_bound(inst.n, vs.front(), inst.t);
    }
    case Method::exp_moment:
      return exp_moment_bound(moment_vectors(inst), inst.t);
    case Method::z_nm:
      return z_nm_bound(moment_vectors(inst), inst.t);
    case Method::refined_binomial:
      return refined_binomial_bound(moment_vectors(inst), inst.t);
    case Method::xi_sum:
      return xi_sum_bound(classes_as<VarianceClassSpec>(inst), inst.t);
    case Method::conditional_means:
      return conditional_means_bound(classes_as<ConditionalMeansSpec>(inst), inst.t);
    case Method::conditional_probs:
      return conditional_probs_bound(std::get<ConditionalProbsSpec>(inst.classes.front()), inst.n, inst.t);
  }
  throw std::logic_error("unhandled method");
}

}  // namespace

std::vector<Method> applicable_methods(InfoLevel level) {
  std::vector<Method> out{Method::markov, Method::hoeffding, Method::hoeffding_exp, Method::bentkus_linear,
                          Method::missing_factor, Method::binomial_comparison};
  switch (level) {
    case InfoLevel::mean:
      break;
    case InfoLevel::moments:
      out.insert(out.end(), {Method::exp_moment, Method::z_nm, Method::refined_binomial});
      break;
    case InfoLevel::variance:
      out.insert(out.end(), {Method::bennett, Method::exp_moment, Method::z_nm, Method::refined_binomial,
                             Method::xi_sum});
      break;
    case InfoLevel::conditional_means:
      out.push_back(Method::conditional_means);
      break;
    case InfoLevel::conditional_probs:
      out.push_back(Method::conditional_probs);
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MethodOutcome> evaluate_methods(const Instance& inst, std::span<const Method> selected) {
  const auto applicable = applicable_methods(inst.level);
  std::vector<Method> methods(selected.begin(), selected.end());
  if (methods.empty()) methods = applicable;
  const BoundContext ctx{inst.n, inst.mean_p(), inst.common_sigma2(), inst.t};
  std::vector<MethodOutcome> out;
  for (Method m : methods) {
    MethodOutcome o{m, ctx, std::nullopt, {}};
    if (std::find(applicable.begin(), applicable.end(), m) == applicable.end()) {
      o.skip_reason = "not applicable at level " + std::string(level_name(inst.level));
    } else {
      try {
        BoundReport r = compute(m, inst);
        r.context = ctx;
        o.report = std::move(r);
      } catch (const PreconditionError& e) {
        o.skip_reason = e.what();
      } catch (const DomainError& e) {
        o.skip_reason = e.what();
      } catch (const InfeasibleMomentsError& e) {
        o.skip_reason = e.what();
      } catch (const ResourceError& e) {
        o.skip_reason = e.what();
      }
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<MethodOutcome> evaluate_instance(const Instance& inst, std::span<const Method> selected) {
  std::vector<MethodOutcome> out;
  for (const auto& one : expand_sweep(inst)) {
    auto part = evaluate_methods(one, selected);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

}  // namespace tailbound
