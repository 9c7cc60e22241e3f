# krein_weyl/io_handler.py
import csv
import json
import logging
import math
import os
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import SpecFormatError
from .models.integral_system import IntegralSystem
from .models.stieltjes_measure import StieltjesMeasure

logger = logging.getLogger(__name__)

CSV_HEADER = ["lambda_re", "lambda_im", "q_re", "q_im", "err_radius", "regime"]

_MEASURE_KEYS = {"atoms", "segments", "tail_density", "b_rep"}
_SYSTEM_KEYS = {"r1", "r2", "name", "notes", "endpoint", "allow_indefinite"}

# Linha de tabela: (λ, q, raio de erro, regime) ou (λ, None, None, mensagem de erro)
QRow = Tuple[complex, Optional[complex], Optional[float], str]


def format_real(value: float) -> str:
    """Formata um real com 17 dígitos significativos (ida e volta exata)."""
    return "%.17g" % value


class IOHandler:
    """
    Gerencia a leitura e a escrita dos arquivos da ferramenta.

    Esta classe é responsável por:
    - Ler arquivos de especificação de sistema (JSON) e convertê-los em medidas
    - Escrever a forma canônica de uma especificação
    - Escrever tabelas de q em CSV
    - Tratar codificações de arquivo
    """

    ENCODINGS_TO_TRY = ["utf-8", "iso-8859-1", "cp1252", "latin-1"]

    def __init__(self):
        self.warnings: List[str] = []

    # --- Leitura ---

    def read_spec(self, filepath: str) -> Dict[str, Any]:
        """
        Lê o objeto JSON de um arquivo de especificação.

        Args:
            filepath: Caminho do arquivo.

        Returns:
            Dict[str, Any]: Objeto lido.

        Raises:
            OSError: Se o arquivo não puder ser aberto.
            SpecFormatError: Se o conteúdo não for decodificável ou não for um objeto JSON.
        """
        content = None
        for enc in self.ENCODINGS_TO_TRY:
            try:
                with open(filepath, "r", encoding=enc) as f:
                    content = f.read()
                break
            except UnicodeDecodeError:
                continue
        if content is None:
            raise SpecFormatError(
                filepath,
                f"Não foi possível decodificar usando: {', '.join(self.ENCODINGS_TO_TRY)}.",
            )
        try:
            data = json.loads(content)
        except json.JSONDecodeError as e:
            raise SpecFormatError(filepath, f"JSON inválido na linha {e.lineno}: {e.msg}") from e
        if not isinstance(data, dict):
            raise SpecFormatError(filepath, "A especificação deve ser um objeto JSON.")
        return data

    def parse_measure(self, data: Any, filepath: str, key: str) -> StieltjesMeasure:
        """
        Converte a descrição de uma medida em StieltjesMeasure.

        Formato: {"atoms": [[p, m], ...], "segments": [[s, e, d], ...],
        "tail_density": β, "b_rep": b} (todas as chaves opcionais).

        Raises:
            SpecFormatError: Se a descrição não for válida.
        """
        if not isinstance(data, dict):
            raise SpecFormatError(filepath, f"'{key}' deve ser um objeto.")
        for unknown in sorted(set(data) - _MEASURE_KEYS):
            message = f"Chave desconhecida '{key}.{unknown}' ignorada."
            self.warnings.append(message)
            logger.warning(message)
        try:
            return StieltjesMeasure(
                atoms=data.get("atoms", []),
                segments=data.get("segments", []),
                tail_density=data.get("tail_density", 0.0),
                b_rep=data.get("b_rep"),
            )
        except (TypeError, ValueError) as e:
            raise SpecFormatError(filepath, f"Medida '{key}' inválida: {e}") from e

    def parse_system(
        self, data: Dict[str, Any], filepath: str
    ) -> Tuple[StieltjesMeasure, StieltjesMeasure, Dict[str, Any]]:
        """
        Extrai (R₁, R₂, metadados) de uma especificação já lida.

        Os metadados reconhecidos são name, notes, endpoint e allow_indefinite.

        Raises:
            SpecFormatError: Se faltar r1/r2 ou algum campo tiver tipo errado.
        """
        for required in ("r1", "r2"):
            if required not in data:
                raise SpecFormatError(filepath, f"Campo obrigatório '{required}' ausente.")
        for unknown in sorted(set(data) - _SYSTEM_KEYS):
            message = f"Chave desconhecida '{unknown}' ignorada."
            self.warnings.append(message)
            logger.warning(message)

        r1 = self.parse_measure(data["r1"], filepath, "r1")
        r2 = self.parse_measure(data["r2"], filepath, "r2")

        metadata: Dict[str, Any] = {}
        name = data.get("name")
        if name is not None and not isinstance(name, str):
            raise SpecFormatError(filepath, "'name' deve ser texto.")
        metadata["name"] = name
        metadata["notes"] = data.get("notes")
        endpoint = data.get("endpoint")
        if endpoint is not None:
            try:
                endpoint = float(endpoint)
            except (TypeError, ValueError) as e:
                raise SpecFormatError(filepath, f"'endpoint' inválido: {endpoint!r}") from e
        metadata["endpoint"] = endpoint
        allow = data.get("allow_indefinite", False)
        if not isinstance(allow, bool):
            raise SpecFormatError(filepath, "'allow_indefinite' deve ser booleano.")
        metadata["allow_indefinite"] = allow
        return r1, r2, metadata

    # --- Escrita ---

    @staticmethod
    def measure_to_dict(measure: StieltjesMeasure) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "atoms": [[p, m] for p, m in measure.atoms],
            "segments": [[s, e, d] for s, e, d in measure.segments],
            "tail_density": measure.tail_density,
            "b_rep": measure.b_rep,
        }
        return data

    def system_to_dict(self, system: IntegralSystem, notes: Optional[str] = None) -> Dict[str, Any]:
        """Forma canônica de um sistema (chaves fixas, medidas normalizadas)."""
        data: Dict[str, Any] = {
            "r1": self.measure_to_dict(system.r1),
            "r2": self.measure_to_dict(system.r2),
        }
        if system.name:
            data["name"] = system.name
        if notes:
            data["notes"] = notes
        if math.isfinite(system.endpoint) and system.endpoint != system.described_end:
            data["endpoint"] = system.endpoint
        if system.allow_indefinite:
            data["allow_indefinite"] = True
        return data

    def write_spec(self, filepath: str, system: IntegralSystem, notes: Optional[str] = None) -> bool:
        """
        Escreve a especificação canônica de um sistema.

        Os reais saem na representação mais curta que relê o mesmo double.

        Returns:
            bool: True se a escrita foi bem sucedida, False caso contrário.
        """
        text = json.dumps(self.system_to_dict(system, notes), indent=2, sort_keys=True)
        try:
            with open(filepath, "w", encoding="utf-8") as f:
                f.write(text + "\n")
            return True
        except OSError as e:
            logger.error("Não foi possível escrever '%s': %s", os.path.basename(filepath), e)
            return False

    @staticmethod
    def q_row_fields(row: QRow) -> List[str]:
        """Campos CSV de uma linha (λ, q, erro, regime); linhas com erro levam nan."""
        lam, q, error, label = row
        if q is None:
            return [format_real(lam.real), format_real(lam.imag), "nan", "nan", "nan", label]
        return [
            format_real(lam.real),
            format_real(lam.imag),
            format_real(q.real),
            format_real(q.imag),
            format_real(error),
            label,
        ]

    def write_q_csv(self, filepath: str, rows: Iterable[QRow]) -> bool:
        """
        Escreve a tabela de q em CSV com cabeçalho fixo.

        Args:
            filepath: Caminho do arquivo de saída.
            rows: Linhas na ordem da grade.

        Returns:
            bool: True se a escrita foi bem sucedida, False caso contrário.
        """
        try:
            with open(filepath, "w", encoding="utf-8", newline="") as f:
                writer = csv.writer(f)
                writer.writerow(CSV_HEADER)
                for row in rows:
                    writer.writerow(self.q_row_fields(row))
            return True
        except OSError as e:
            logger.error("Não foi possível escrever CSV '%s': %s", os.path.basename(filepath), e)
            return False

    def write_table(self, stream, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
        """Escreve uma tabela CSV em um stream aberto (ex.: sys.stdout)."""
        writer = csv.writer(stream)
        writer.writerow(list(header))
        for row in rows:
            writer.writerow(list(row))
