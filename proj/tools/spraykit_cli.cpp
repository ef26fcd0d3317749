// Placeholder while the library core is under construction.
int main() { return 0; }
