export {
  NamedTrace,
  PlotDataError,
  SpeedupBar,
  TimingRow,
  TraceRow,
  TRACE_HEADER,
  TIMINGS_HEADER,
  parseTimings,
  parseTrace,
  speedups,
} from "./data.js";
export {
  ConvergenceInfo,
  ConvergenceOptions,
  SpeedupInfo,
  XAxisKind,
  buildConvergence,
  buildSpeedup,
} from "./layout.js";
export { FigureModel, Shape } from "./figure.js";
export { linearTicks, logTicks, niceCeil, tickStep } from "./ticks.js";
export { encodePng, PNG_SIGNATURE } from "./png.js";
export { Raster, hexColor } from "./raster.js";
export { toSvg } from "./svg.js";
export { UsageError, renderPng, writeFigure } from "./render.js";
