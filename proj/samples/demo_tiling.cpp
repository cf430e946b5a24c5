// Builds the extremal graph B[A,B] on 12 vertices with |A| odd and shows it
// has no K^3_{2,2}-factor, then does the same split with |A| even.

#include <iostream>

#include "hypertile/hypertile.hpp"

namespace ht = hypertile;

namespace {

void show(int a, int b) {
    const auto host = ht::b_construction(a, b);
    const auto pattern = ht::k3_st(2, 2);
    std::cout << "B[" << a << "," << b << "]: " << host.graph.size() << " edges, codegree "
              << ht::min_s_degree(host.graph, 2) << "\n";
    const auto outcome = ht::has_perfect_tiling(host.graph, pattern);
    if (!outcome) {
        std::cout << "  K3_{2,2}-factor: none (" << ht::to_string(outcome.reason) << ")\n";
        return;
    }
    std::cout << "  K3_{2,2}-factor with " << outcome.certificate->copies.size() << " copies\n";
    for (const auto& copy : outcome.certificate->copies) {
        std::cout << "   ";
        for (auto v : copy.image) std::cout << ' ' << v;
        std::cout << "\n";
    }
    std::cout << "  certificate valid: " << std::boolalpha
              << ht::verify_certificate(host.graph, pattern, *outcome.certificate) << "\n";
}

}  // namespace

int main() {
    const auto [a, b] = ht::balanced_split(12);
    show(a, b);
    // every copy meets A in an even number of vertices, so only even |A| can be covered
    show(6, 6);
}
