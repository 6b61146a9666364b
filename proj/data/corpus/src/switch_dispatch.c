enum op { OP_ADD, OP_SUB, OP_MUL, OP_DIV, OP_MOD, OP_AND, OP_OR, OP_XOR };

int dispatch(int op, int a, int b) {
  switch (op) {
    case OP_ADD: return a + b;
    case OP_SUB: return a - b;
    case OP_MUL: return a * b;
    case OP_DIV: return b != 0 ? a / b : 0;
    case OP_MOD: return b != 0 ? a % b : 0;
    case OP_AND: return a & b;
    case OP_OR:  return a | b;
    case OP_XOR: return a ^ b;
    default:     return 0;
  }
}

int fold(const int *ops, int n, int seed) {
  int acc = seed;
  for (int i = 0; i < n; i++) acc = dispatch(ops[i] & 7, acc, i + 1);
  return acc;
}
