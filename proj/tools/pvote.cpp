#include <pvote/cli.hpp>

int main(int argc, char** argv) { return pvote::run(argc, argv); }
