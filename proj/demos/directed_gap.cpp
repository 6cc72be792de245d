// Planted game -> directed 3-spanner -> lifted fractional solution -> certificate and gap.
#include <iostream>

#include "liftgap/games/generators.hpp"
#include "liftgap/gap/integral.hpp"
#include "liftgap/gap/phi.hpp"
#include "liftgap/reductions/builders.hpp"
#include "liftgap/sdp/projection_sdp.hpp"

using namespace liftgap;

int main() {
  GameParams p;
  p.n = 3;
  p.m = 3;
  p.K = 2;
  p.q = 3;
  p.D = 1;
  const auto [game, planted] = generate_planted(p, 7);
  auto inst = std::make_shared<const SpannerInstance>(build_directed_spanner(game, 3));
  std::cout << "instance: " << inst->num_vertices() << " vertices, " << inst->num_edges() << " edges\n";

  const auto ystar = local_distribution_solution(game, uniform_support({planted}), 1);
  const auto y = build_fractional(inst, ystar, 1);
  const auto cert = certify_spanner_sdp(y);
  std::cout << "level-1 certificate: " << (cert.pass ? "pass" : "fail") << ", " << cert.moment_rows
            << " moment rows, " << cert.distinct_slack_matrices << " distinct slack matrices\n";

  const auto frac = fractional_objective(y);
  const auto integral = solve_integral(*inst);
  std::cout << "fractional objective " << to_string(frac.value) << " (" << frac.closed_form_text << ")\n";
  if (integral.exact)
    std::cout << "integral optimum " << *integral.exact << ", ratio "
              << to_string(Rational(static_cast<long>(*integral.exact)) / frac.value) << "\n";
  else
    std::cout << "integral optimum in [" << integral.lower << ", " << integral.upper << "]\n";
  return cert.pass ? 0 : 1;
}
