DESCRIPTION_TEXT = (
    "Эвристики для унимодулярных квадратичных программ: максимизация s^H R s "
    "по векторам с единичным модулем, оценки качества и переборный оракул."
)

USAGE_TEXT = (
    "Команды:\n"
    "• gen — сгенерировать матрицу и записать её в файл\n"
    "• solve — решить задачу одним методом (d, greedy, row-swap-greedy, power, random)\n"
    "• bench — прогнать эксперимент из JSON-конфига и записать CSV\n"
    "• oracle — переборный оракул на сетке фаз\n"
    "• check — набор инвариантов и оценок для матрицы или сгенерированной пачки\n"
    "• transform — построить R̄ и проверить условие теоремы о жадном методе\n"
    "• bounds — оценки качества для матрицы или таблица оценок по N"
)

ERROR_TEXT = "Ошибка: {message}"
IO_ERROR_TEXT = "Ошибка ввода-вывода: {message}"
MATRIX_WRITTEN = "Матрица {n}x{n} записана в {path}"
FILE_WRITTEN = "Файл записан: {path}"

REPORT_LINES = (
    "Метод: {method}\n"
    "Значение: {value}\n"
    "Нормированное значение: {normalized}\n"
    "Итерации: {iterations}"
)
SWAP_LINE = "Перестановка строк: ({m}, {n})"
NO_SWAP_LINE = "Перестановка строк: нет (тождественная)"
PHASES_LINE = "Фазы: {phases}"

ORACLE_LINES = (
    "Значение оракула: {value}\n"
    "Точек сетки на фазу: {grid}\n"
    "Аргмакс (фазы): {phases}\n"
    "Это оптимум дискретной задачи — нижняя оценка непрерывного оптимума."
)

TRANSFORM_LINES = (
    "δ: {deltas}\n"
    "a: {loads}\n"
    "Tr(R) = {trace_r}, Tr(R̄) = {trace_rbar}\n"
    "Условие Tr(R̄) <= Tr(R): {condition}"
)

BOUNDS_LINES = (
    "Спектральные границы: [{spectral_lo}, {spectral_hi}]\n"
    "Оценка доминантного собственного вектора: {prop1_ratio}\n"
    "Гарантия 1-1/e применима: {thm1}\n"
    "2N-доминантность: {prop2} (оценка {prop2_ratio}, нижняя граница любого решения {universal_ratio})"
)
CURVE_HEADER = "N\t1-1/e\tжадный (2N-дом.)\tлюбое решение (2N-дом.)"

CHECK_SUMMARY = "Матрица #{index} (N={n}): проверок {total}, провалено {failed}"
CHECK_FAILURE = "  ✗ {name}: {detail}"
CHECK_ALL_OK = "Все проверки пройдены."
CHECK_HAS_FAILURES = "Есть нарушения: {failed}"

BENCH_SUMMARY_HEADER = "N\tметод\tкол-во\tсреднее\tминимум"
BENCH_SUMMARY_ROW = "{n}\t{method}\t{count}\t{mean:.4f}\t{min:.4f}"

YES = "да"
NO = "нет"
