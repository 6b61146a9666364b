int gcd(int a, int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    int r = a % b;
    a = b;
    b = r;
  }
  return a;
}

int lcm(int a, int b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

int coprime_count(int n) {
  int count = 0;
  for (int i = 1; i <= n; i++) {
    if (gcd(i, n) == 1) count++;
  }
  return count;
}
