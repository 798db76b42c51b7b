"""
Onion Framework - 命令行入口
子命令：generate / mu / crossings / harvest / dichotomy / nocut / embed / bounds / oracle / dot

JSON 结果写到标准输出，日志写到标准错误。
退出码：0 成功，1 契约违反 / IO / 解析错误，2 Inconclusive。
"""

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

# 添加项目根目录到Python路径
project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from onion_framework.config.settings import get_config
from onion_framework.core.crossing import CrossingAnalysis, WellCrossingPair, check_well_crossing
from onion_framework.core.digraph import (
    MultiDigraph, PathFamily, format_edge_list, format_path_family, parse_edge_list, parse_path_family,
)
from onion_framework.core.export import (
    bound_to_dict, cut_to_dict, digraph_to_dict, digraph_to_dot, envelope, family_to_list,
    immersion_to_dict, model_to_dot, path_to_list, render_json, write_dot,
)
from onion_framework.core.extremal import BOUND_NAMES, bounds
from onion_framework.core.flow import max_disjoint_paths, min_cut, mu
from onion_framework.core.oracle import immersion_exists, max_disjoint_brute, opposite_pair_exists
from onion_framework.core.utils import (
    ContractViolation, OnionException, OnionLogger, ParseError, error_handler, read_text, write_text,
)
from onion_framework.workflows.duality import (
    LinkedSetInstance, embed_degree_bounded, no_cut_to_onion_star, onion_or_uncross,
)
from onion_framework.workflows.generators import GENERATOR_KINDS, generate
from onion_framework.workflows.harvest import harvest_many, harvest_onion_star, harvest_single
from onion_framework.workflows.outcomes import Inconclusive, OutcomeTag

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2

logger = OnionLogger.get_logger("cli")

CommandResult = Tuple[Dict[str, Any], int]


@dataclass
class RunConfig:
    """一次命令行调用的完整配置"""
    command: str
    input: Optional[str] = None
    output: Optional[str] = None
    dot: Optional[str] = None
    seed: int = 0
    working_threshold: Optional[int] = None
    budget: Optional[int] = None
    cap: Optional[int] = None
    digit_cap: Optional[int] = None
    params: Dict[str, Any] = field(default_factory=dict)

    _COMMON = ("command", "input", "output", "dot", "seed", "working_threshold", "budget", "cap", "digit_cap")

    @classmethod
    def from_namespace(cls, namespace: argparse.Namespace) -> 'RunConfig':
        values = dict(vars(namespace))
        common = {key: values.pop(key, None) for key in cls._COMMON}
        if common["seed"] is None:
            common["seed"] = get_config('general.seed', 0)
        return cls(params=values, **common)

    def validate(self) -> None:
        """
        校验配置

        Raises:
            ContractViolation: 上限非正、种子为负或预算过小
        """
        for name in ("cap", "digit_cap", "working_threshold"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ContractViolation(f"--{name.replace('_', '-')} 必须为正整数，实际为 {value}")
        if self.budget is not None and self.budget < 2:
            raise ContractViolation(f"--budget 至少为 2，实际为 {self.budget}")
        if self.seed < 0:
            raise ContractViolation(f"--seed 不能为负，实际为 {self.seed}")

    def get(self, key: str, default: Any = None) -> Any:
        value = self.params.get(key)
        return default if value is None else value

    def require(self, key: str) -> Any:
        value = self.params.get(key)
        if value is None:
            raise ContractViolation(f"子命令 {self.command} 需要参数 --{key.replace('_', '-')}")
        return value


# ---- 输入 ----

def load_digraph(filepath: Optional[str]) -> MultiDigraph:
    if not filepath:
        raise ContractViolation("需要 --input 边列表文件")
    return parse_edge_list(read_text(filepath))


def load_family(filepath: str, d: MultiDigraph) -> PathFamily:
    return parse_path_family(read_text(filepath), d)


def _emit_dot(config: RunConfig, source: str) -> None:
    if config.dot:
        write_dot(source, config.dot)
        logger.info(f"DOT 已写入: {config.dot}")


def _inconclusive(kind: str, outcome: Inconclusive) -> CommandResult:
    return envelope(kind, outcome.to_dict()), EXIT_INCONCLUSIVE


# ---- 子命令 ----

@error_handler.handle_exception
def cmd_generate(config: RunConfig) -> CommandResult:
    kind = config.require("kind")
    params = {key: config.get(key) for key in ("t", "k", "p", "q", "n", "m") if config.get(key) is not None}
    if kind == "crossing-grid":
        params.update(p_order=config.get("p_order", "ascending"), q_order=config.get("q_order", "descending"))
        params["seed"] = config.seed
    elif kind == "random":
        params["seed"] = config.seed
    instance = generate(kind, **params)
    d = instance.digraph

    if config.output:
        write_text(format_edge_list(d), config.output)
        logger.info(f"边列表已写入: {config.output}")
    if instance.P is not None:
        if config.get("p_output"):
            write_text(format_path_family(instance.P), config.get("p_output"))
        if config.get("q_output"):
            write_text(format_path_family(instance.Q), config.get("q_output"))
    _emit_dot(config, digraph_to_dot(d, name=kind.replace("-", "_")))

    payload: Dict[str, Any] = {"generator": kind, "digraph": digraph_to_dict(d), "marks": instance.marks}
    if instance.P is not None:
        payload["P"] = family_to_list(instance.P)
        payload["Q"] = family_to_list(instance.Q)
    return envelope("generate", payload), EXIT_OK


@error_handler.handle_exception
def cmd_mu(config: RunConfig) -> CommandResult:
    d = load_digraph(config.input)
    source, sink = config.require("source"), config.require("sink")
    payload: Dict[str, Any] = {
        "from": source,
        "to": sink,
        "mu": mu(d, source, sink),
        "reverse_mu": mu(d, sink, source),
    }
    if config.get("paths"):
        payload["paths"] = family_to_list(max_disjoint_paths(d, source, sink).paths)
        payload["cut"] = cut_to_dict(min_cut(d, source, sink))
    return envelope("mu", payload), EXIT_OK


def _load_pair(config: RunConfig) -> WellCrossingPair:
    d = load_digraph(config.input)
    P = load_family(config.require("p"), d)
    Q = load_family(config.require("q"), d)
    ctx = WellCrossingPair(d, P, Q, config.require("root"))
    check_well_crossing(ctx)
    return ctx


@error_handler.handle_exception
def cmd_crossings(config: RunConfig) -> CommandResult:
    ctx = _load_pair(config)
    analysis = CrossingAnalysis(ctx)
    payload = {
        "root": ctx.root,
        "sizes": list(ctx.sizes()),
        "threshold": analysis.threshold,
        "crossings": analysis.report(),
    }
    return envelope("crossings", payload), EXIT_OK


@error_handler.handle_exception
def cmd_harvest(config: RunConfig) -> CommandResult:
    ctx = _load_pair(config)
    d = ctx.digraph
    mode = config.get("mode", "single")
    pair_order = config.get("pair_order")
    n = config.get("n", 1)
    t = config.get("t", 1)

    if mode == "single":
        outcome = harvest_single(ctx, n, pair_order, config.seed)
        if isinstance(outcome, Inconclusive):
            return _inconclusive("harvest", outcome)
        _emit_dot(config, model_to_dot(outcome.onion.to_immersion_model(d), "onion"))
        return envelope("harvest", {"mode": mode, "result": outcome.to_dict()}), EXIT_OK

    if mode == "many":
        batch = harvest_many(ctx, t, n, config.get("direction", "out"), pair_order, config.seed)
        if isinstance(batch, Inconclusive):
            return _inconclusive("harvest", batch)
        highlights = {f"onion {index}": o.paths() for index, o in enumerate(batch.onions)}
        _emit_dot(config, digraph_to_dot(d, highlights, "onions"))
        return envelope("harvest", {"mode": mode, "result": batch.to_dict()}), EXIT_OK

    if mode == "star":
        star = harvest_onion_star(ctx, t, pair_order, config.seed)
        if isinstance(star, Inconclusive):
            return _inconclusive("harvest", star)
        _emit_dot(config, model_to_dot(star.to_immersion_model(d), "onion_star"))
        return envelope("harvest", {"mode": mode, "result": star.to_dict()}), EXIT_OK

    raise ContractViolation(f"未知的收割模式: {mode}（可选 single, many, star）")


@error_handler.handle_exception
def cmd_dichotomy(config: RunConfig) -> CommandResult:
    d = load_digraph(config.input)
    families = None
    if config.get("p") or config.get("q"):
        families = (load_family(config.require("p"), d), load_family(config.require("q"), d))
    outcome = onion_or_uncross(d, config.require("y"), config.require("z"), config.get("t", 1),
                               config.get("k", 1), config.working_threshold, families)
    if outcome.tag is OutcomeTag.INCONCLUSIVE:
        return envelope("dichotomy", outcome.to_dict()), EXIT_INCONCLUSIVE
    if outcome.star is not None:
        _emit_dot(config, model_to_dot(outcome.star.to_immersion_model(d), "onion_star"))
    else:
        P, Q = outcome.families
        _emit_dot(config, digraph_to_dot(d, {"P": P, "Q": Q}, "uncrossed"))
    return envelope("dichotomy", outcome.to_dict()), EXIT_OK


@error_handler.handle_exception
def cmd_nocut(config: RunConfig) -> CommandResult:
    d = load_digraph(config.input)
    inst = LinkedSetInstance(d, tuple(config.require("x")), config.get("t", 1))
    outcome = no_cut_to_onion_star(inst, config.budget, working_threshold=config.working_threshold)
    if isinstance(outcome, Inconclusive):
        return _inconclusive("nocut", outcome)
    _emit_dot(config, model_to_dot(outcome.to_immersion_model(d), "onion_star"))
    return envelope("nocut", {"result": "onion-star", "star": outcome.to_dict()}), EXIT_OK


@error_handler.handle_exception
def cmd_embed(config: RunConfig) -> CommandResult:
    h = load_digraph(config.input)
    model = embed_degree_bounded(h, config.require("t"))
    _emit_dot(config, model_to_dot(model, "embedding"))
    payload = {"t": config.require("t"), "host": digraph_to_dict(model.host), "model": immersion_to_dict(model)}
    return envelope("embed", payload), EXIT_OK


@error_handler.handle_exception
def cmd_bounds(config: RunConfig) -> CommandResult:
    name = config.require("name")
    args: List[int] = list(config.require("args"))
    value = bounds(name, *args, digit_cap=config.digit_cap)
    return envelope("bounds", bound_to_dict(name, args, value)), EXIT_OK


@error_handler.handle_exception
def cmd_oracle(config: RunConfig) -> CommandResult:
    mode = config.get("mode", "immersion")
    if mode == "immersion":
        pattern = load_digraph(config.require("pattern"))
        host = load_digraph(config.input)
        model = immersion_exists(pattern, host, config.cap)
        payload: Dict[str, Any] = {"mode": mode, "exists": model is not None}
        if model is not None:
            payload["model"] = immersion_to_dict(model)
            _emit_dot(config, model_to_dot(model, "immersion"))
        return envelope("oracle", payload), EXIT_OK

    d = load_digraph(config.input)
    source, sink = config.require("source"), config.require("sink")
    if mode == "opposite":
        pair = opposite_pair_exists(d, source, sink, config.cap)
        payload = {"mode": mode, "from": source, "to": sink, "exists": pair is not None}
        if pair is not None:
            payload["forward"] = path_to_list(pair[0])
            payload["backward"] = path_to_list(pair[1])
        return envelope("oracle", payload), EXIT_OK
    if mode == "disjoint":
        count = max_disjoint_brute(d, source, sink, config.cap)
        return envelope("oracle", {"mode": mode, "from": source, "to": sink, "count": count}), EXIT_OK
    raise ContractViolation(f"未知的验证模式: {mode}（可选 immersion, opposite, disjoint）")


@error_handler.handle_exception
def cmd_dot(config: RunConfig) -> CommandResult:
    d = load_digraph(config.input)
    highlights = {}
    for key in ("p", "q"):
        if config.get(key):
            highlights[key.upper()] = load_family(config.get(key), d)
    source = digraph_to_dot(d, highlights or None)
    if config.output:
        write_dot(source, config.output)
    else:
        sys.stdout.write(source)
    return envelope("dot", {"output": config.output, "highlighted": sorted(highlights)}), EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], CommandResult]] = {
    "generate": cmd_generate,
    "mu": cmd_mu,
    "crossings": cmd_crossings,
    "harvest": cmd_harvest,
    "dichotomy": cmd_dichotomy,
    "nocut": cmd_nocut,
    "embed": cmd_embed,
    "bounds": cmd_bounds,
    "oracle": cmd_oracle,
    "dot": cmd_dot,
}


def run(config: RunConfig) -> int:
    """
    执行一条子命令

    Returns:
        退出码：0 成功，1 错误，2 Inconclusive
    """
    try:
        config.validate()
        handler = COMMANDS.get(config.command)
        if handler is None:
            raise ContractViolation(f"未知的子命令: {config.command}")
        logger.debug(f"执行子命令: {config.command} {config.params}")
        document, code = handler(config)
    except OnionException as e:
        error = {"error": e.error_code, "message": e.message}
        if isinstance(e, ParseError):
            error["line"] = e.line_number
        document, code = envelope("error", error), EXIT_ERROR

    if config.command != "dot" or code != EXIT_OK or config.output:
        print(render_json(document))
    return code


# ---- 参数解析 ----

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", "-i", help="边列表文件")
    parser.add_argument("--seed", type=int, help="随机种子（默认取配置 general.seed）")
    parser.add_argument("--dot", help="把模型写成 DOT 文件")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="onion", description="有向图浸入与洋葱收割工具")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="生成实例")
    _add_common(p)
    p.add_argument("--kind", required=True, choices=GENERATOR_KINDS)
    for name in ("t", "k", "p", "q", "n", "m"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--p-order", default="ascending")
    p.add_argument("--q-order", default="descending")
    p.add_argument("--output", "-o", help="边列表输出文件")
    p.add_argument("--p-output", help="P 路径族输出文件")
    p.add_argument("--q-output", help="Q 路径族输出文件")

    p = sub.add_parser("mu", help="最大弧不交路径数")
    _add_common(p)
    p.add_argument("--from", dest="source", type=int, required=True)
    p.add_argument("--to", dest="sink", type=int, required=True)
    p.add_argument("--paths", action="store_true", help="同时输出路径族与最小割")

    for name, help_text in (("crossings", "列出交叉及分类"), ("harvest", "收割洋葱")):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        p.add_argument("--p", required=True, help="P 路径族文件")
        p.add_argument("--q", required=True, help="Q 路径族文件")
        p.add_argument("--root", type=int, required=True)
        if name == "harvest":
            p.add_argument("--mode", choices=("single", "many", "star"), default="single")
            p.add_argument("--n", type=int, default=1)
            p.add_argument("--t", type=int, default=1)
            p.add_argument("--direction", choices=("out", "in"), default="out")
            p.add_argument("--pair-order", choices=("lexicographic", "shuffled"))

    p = sub.add_parser("dichotomy", help="洋葱星 / 不交叉二分法")
    _add_common(p)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--Z", "--z", dest="z", type=int, nargs="+", required=True, help="目标顶点集 Z")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--nw", "--working-threshold", dest="working_threshold", type=int, help="工作阈值 N_w")
    p.add_argument("--p", help="y→Z 路径族文件")
    p.add_argument("--q", help="Z→y 路径族文件")

    p = sub.add_parser("nocut", help="连通集到洋葱星")
    _add_common(p)
    p.add_argument("--X", "--x", dest="x", type=int, nargs="+", required=True, help="2t+1 个顶点")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--budget", type=int)
    p.add_argument("--nw", "--working-threshold", dest="working_threshold", type=int, help="工作阈值 N_w")

    p = sub.add_parser("embed", help="度数受限有向图嵌入洋葱星")
    _add_common(p)
    p.add_argument("--pattern", dest="input", help="待嵌入的有向图边列表文件（同 --input）")
    p.add_argument("--t", type=int, required=True)

    p = sub.add_parser("bounds", help="界函数")
    p.add_argument("--name", required=True, choices=BOUND_NAMES)
    p.add_argument("--args", type=int, nargs="+", required=True)
    p.add_argument("--digit-cap", type=int)

    p = sub.add_parser("oracle", help="暴力验证")
    _add_common(p)
    p.add_argument("--mode", choices=("immersion", "opposite", "disjoint"), default="immersion")
    p.add_argument("--pattern", help="pattern 边列表文件（immersion 模式）")
    p.add_argument("--from", dest="source", type=int)
    p.add_argument("--to", dest="sink", type=int)
    p.add_argument("--cap", type=int)

    p = sub.add_parser("dot", help="导出 DOT")
    _add_common(p)
    p.add_argument("--p", help="高亮的 P 路径族文件")
    p.add_argument("--q", help="高亮的 Q 路径族文件")
    p.add_argument("--output", "-o")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """主函数"""
    parser = build_parser()
    namespace = parser.parse_args(argv)
    try:
        return run(RunConfig.from_namespace(namespace))
    except KeyboardInterrupt:
        logger.warning("程序被用户中断")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
