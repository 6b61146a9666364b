#define CAP 32

struct queue {
  int items[CAP];
  int head;
  int tail;
  int size;
};

void queue_init(struct queue *q) {
  q->head = 0;
  q->tail = 0;
  q->size = 0;
}

int queue_push(struct queue *q, int value) {
  if (q->size == CAP) return 0;
  q->items[q->tail] = value;
  q->tail = (q->tail + 1) % CAP;
  q->size++;
  return 1;
}

int queue_pop(struct queue *q, int *out) {
  if (q->size == 0) return 0;
  *out = q->items[q->head];
  q->head = (q->head + 1) % CAP;
  q->size--;
  return 1;
}

int queue_roundtrip(int n) {
  struct queue q;
  queue_init(&q);
  for (int i = 0; i < n; i++) queue_push(&q, i * i);
  int total = 0;
  int v;
  while (queue_pop(&q, &v)) total += v;
  return total;
}
