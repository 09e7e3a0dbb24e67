#include "setvar/setvar.hpp"
int main() { return 0; }
