#include <benchmark/benchmark.h>

#include "algebroid/classify.hpp"
#include "algebroid/deform.hpp"

using namespace algebroid;

namespace {

const std::vector<std::string> kXY = {"x", "y"};

Field field_arg(std::int64_t p) { return p == 0 ? Field() : Field::prime(static_cast<std::uint64_t>(p)); }

}  // namespace

static void BM_Tjurina(benchmark::State& state) {
  const int b = static_cast<int>(state.range(0));
  const Series f = Series::parse("x^3+y^" + std::to_string(b), Field::prime(3), kXY);
  for (auto _ : state) benchmark::DoNotOptimize(tjurina(f));
  state.SetLabel("x^3+y^" + std::to_string(b));
}
BENCHMARK(BM_Tjurina)->Arg(4)->Arg(7)->Arg(10)->Arg(13)->Unit(benchmark::kMillisecond);

static void BM_ContactJetImage(benchmark::State& state) {
  const Series f = Series::parse("x^3+y^4", Field::prime(3), kXY);
  const TangentImage t = tangent_image(f, Flavor::Contact);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jet_image_dim(t, k));
}
BENCHMARK(BM_ContactJetImage)->DenseRange(5, 17, 4)->Unit(benchmark::kMillisecond);

static void BM_HnExpand(benchmark::State& state) {
  const int precision = static_cast<int>(state.range(0));
  const Parametrization p = Parametrization::parse("t^4", "t^6+t^7+t^9", Field::prime(5));
  for (auto _ : state) benchmark::DoNotOptimize(hn_expand(p, precision));
}
BENCHMARK(BM_HnExpand)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMicrosecond);

static void BM_MultSequence(benchmark::State& state) {
  const Parametrization p = Parametrization::parse("t^8", "t^12+t^14+t^15", field_arg(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mult_sequence(p));
}
BENCHMARK(BM_MultSequence)->Arg(0)->Arg(7)->Unit(benchmark::kMicrosecond);

static void BM_Classify(benchmark::State& state) {
  static const char* const forms[] = {"x^2+y^7", "x*(y^2+x^5)", "x^3+y^5", "x^3+x^2*y^2+y^4"};
  const char* text = forms[state.range(0)];
  const Series f = Series::parse(text, field_arg(state.range(1)), kXY);
  for (auto _ : state) benchmark::DoNotOptimize(classify(f));
  state.SetLabel(text);
}
BENCHMARK(BM_Classify)
    ->Args({0, 0})
    ->Args({1, 0})
    ->Args({2, 7})
    ->Args({3, 3})
    ->Unit(benchmark::kMillisecond);

static void BM_EliminateParameter(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const ParamFamily fam = ParamFamily::parse("z^" + std::to_string(m),
                                             "z^" + std::to_string(m + 1) + "+t*z^" + std::to_string(m + 2) +
                                                 "+z^" + std::to_string(2 * m + 1),
                                             Field::prime(7), {"z", "t"});
  for (auto _ : state) benchmark::DoNotOptimize(eliminate_parameter(fam, kExact));
}
BENCHMARK(BM_EliminateParameter)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_PathologyTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pathology_family(3));
}
BENCHMARK(BM_PathologyTable)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
