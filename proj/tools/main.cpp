#include "harness.hpp"

int main(int argc, char** argv) { return swiftlink::harness::run_cli(argc, argv); }
