#include "srslab/report/app.hpp"

int main(int argc, char** argv) { return srslab::report::run_main(argc, argv); }
