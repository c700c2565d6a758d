"""Result output: machine-readable JSON (or JSON lines / CSV) to stdout or a
file, human-readable summaries rendered from Jinja2 templates to the log.
"""
import os
import sys
import json
import logging
from jinja2 import Environment, PackageLoader


class SkipFileError(FileExistsError):
    """Will be raised if a file that is to be written already exists and
    should be skipped according to user flags.
    """


class Report():
    """Writes the result of one command run
    """

    def __init__(self, output=None, overwrite_exists=False,
                 skip_exists=False, stream=None):
        """Params:
            output: optional path of the result file, stdout otherwise
            overwrite_exists: Boolean specifying if existing files should be
                overwritten. An error is raised otherwise.
            skip_exists: Boolean specifying if existing files should be
                skipped. An error is raised otherwise.
            stream: text stream replacing sys.stdout
        """
        self.__output = output
        self.__overwrite = overwrite_exists
        self.__skip = skip_exists
        self.__stream = stream
        self.__summary_dname = 'summary'
        # ATTENTION: using __package__ may only work as long as this module
        # (report.py) is located in the top-level import directory
        loader = PackageLoader(__package__, self.__summary_dname)
        self.__env = Environment(loader=loader, trim_blocks=True,
                                 lstrip_blocks=True)

    @staticmethod
    def dumps(payload):
        """JSON text with a fixed layout (insertion order, two-space indent)
        """
        return json.dumps(payload, indent=2) + '\n'

    def emit(self, command, payload, text=None):
        """Write the result and log its summary.

        Params:
            command: sub-command name, selects summary/<command>.txt
            payload: dict with the result, also the summary context
            text: optional result text replacing the JSON dump of payload
        """
        text = self.dumps(payload) if text is None else text
        if self.__output:
            self.write_file(self.__output, text)
        else:
            stream = self.__stream or sys.stdout
            stream.write(text)
        self.summary(command, payload)

    def summary(self, command, payload):
        logger = logging.getLogger('Report.summary')
        template = self.__env.get_template(f'{command}.txt')
        for line in template.render(**payload).splitlines():
            if line.strip():
                logger.info(line)

    def write_file(self, fpath, text):
        """Write text to fpath according to the overwrite/skip flags

        Returns: True if the file has been written
        Raises:
            FileExistsError: if fpath exists and neither skip nor overwrite
                is set
        """
        logger = logging.getLogger('Report.write_file')
        try:
            self.__check_file(fpath)
        except SkipFileError:
            logger.warning('File %s exists, skipping', fpath)
            return False
        parent_dname = os.path.dirname(fpath)
        if parent_dname and not os.path.exists(parent_dname):
            os.makedirs(parent_dname)
        with open(fpath, 'w', encoding='utf-8') as handle:
            handle.write(text)
        logger.debug('wrote %s', fpath)
        return True

    def __check_file(self, fpath):
        """Check whether the given file can be written without conflict. A
        conflict arises if the file exists and should not be skipped or
        overwritten.

        Raises:
            SkipFileError: if writing the file should be skipped.
            FileExistsError: if the file already exists and should not be
                overwritten.
        """
        if os.path.exists(fpath) and self.__skip:
            raise SkipFileError(f'File {fpath} already exists, skip.')
        if os.path.exists(fpath) and not self.__overwrite:
            raise FileExistsError(f'File {fpath} already exists, exit.'
                                  ' (use --skip-exists or --overwrite-exists'
                                  ' to control behavior)')
        return True
