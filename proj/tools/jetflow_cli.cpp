#include <cstdio>
int main() { std::puts("jetflow: subcommands land with the run configuration"); return 0; }
